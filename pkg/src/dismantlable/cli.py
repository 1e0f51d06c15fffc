"""Command line front end.

    dismantlable check <spec> [--json]
    dismantlable verify-paper [--dihedral-max N] [--abelian-max N]
    dismantlable survey <spec> [--min-order k]
    dismantlable export <spec> --format dot|json [--out path]

Caps come from flags, falling back to the environment variables
``DISMANTLABLE_ORDER_CAP``, ``DISMANTLABLE_SUBGROUP_LIMIT`` and
``DISMANTLABLE_CROWN_BOUND``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from .algorithms import Crown, validate_crown
from .classify import IN_D, UNKNOWN, Analysis, analyze, crown_in_group_ok
from .corpus import Bounds, verify_paper
from .dsl import parse_spec
from .groups import DEFAULT_ORDER_CAP, Group, GroupError, build_group
from .subgroups import (DEFAULT_SUBGROUP_LIMIT, SubgroupLimitExceeded, build_lattice, subgroup_as_group,
                        subgroup_conjugacy_classes, to_dot)

SCHEMA = 1
LARGE_AMBIENT_ORDER = 400


@dataclass
class Report:
    spec: str
    order: int
    profile: dict
    predicted: dict
    computed: dict
    subgroups: int | None = None
    timings: dict | None = None
    schema: int = SCHEMA

    def to_json(self) -> str:
        d = asdict(self)
        if d["timings"] is None:
            del d["timings"]
        return json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(**d)


@dataclass
class SurveyRow:
    ambient: str
    representative: str
    order: int
    class_size: int
    computed_in_d: bool | None
    is_metacyclic: bool
    predicted: str

    def line(self) -> str:
        ind = {True: "InD", False: "NotInD", None: "?"}[self.computed_in_d]
        return (f"{self.order:>4}  {ind:<7} metacyclic={'yes' if self.is_metacyclic else 'no ':<3}  "
                f"predicted={self.predicted:<28} x{self.class_size:<3} {self.representative}")


@dataclass
class Survey:
    ambient: str
    rows: list[SurveyRow] = field(default_factory=list)

    @property
    def counterexamples(self) -> list[SurveyRow]:
        return [r for r in self.rows if r.computed_in_d and not r.is_metacyclic]


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _caps(args) -> tuple[int, int, int | None]:
    order_cap = args.order_cap or _env_int("DISMANTLABLE_ORDER_CAP", DEFAULT_ORDER_CAP)
    limit = args.subgroup_limit or _env_int("DISMANTLABLE_SUBGROUP_LIMIT", DEFAULT_SUBGROUP_LIMIT)
    bound = args.crown_bound or (int(os.environ["DISMANTLABLE_CROWN_BOUND"])
                                 if os.environ.get("DISMANTLABLE_CROWN_BOUND") else None)
    return order_cap, limit, bound


def _checked_witness(a: Analysis) -> None:
    """Every crown re-validates before it is printed."""
    comp = a.verdict.computed
    if isinstance(comp.witness, Crown):
        if not validate_crown(comp.lattice, comp.witness):
            raise AssertionError("crown failed re-validation")
        if comp.crown_subgroups is not None and not crown_in_group_ok(comp.crown_subgroups):
            raise AssertionError("crown failed re-validation in the ambient group")


def make_report(spec_text: str, a: Analysis, timings: dict | None = None) -> Report:
    _checked_witness(a)
    return Report(
        spec=spec_text,
        order=a.group.order,
        profile=a.profile.to_dict(),
        predicted=a.verdict.predicted.to_dict(),
        computed=a.verdict.computed.to_dict(a.group),
        subgroups=len(a.lattice) if a.lattice is not None else None,
        timings=timings,
    )


def cmd_check(spec_text: str, order_cap: int = DEFAULT_ORDER_CAP, subgroup_limit: int = DEFAULT_SUBGROUP_LIMIT,
              crown_bound: int | None = None, timings: bool = False) -> tuple[Report, bool]:
    """Analyze one group; the flag is False when prediction and computation disagree."""
    t0 = time.perf_counter()
    spec = parse_spec(spec_text)
    g = build_group(spec, order_cap)
    t1 = time.perf_counter()
    a = analyze(g, subgroup_limit=subgroup_limit, crown_bound=crown_bound)
    t2 = time.perf_counter()
    tm = {"build_s": round(t1 - t0, 4), "analyze_s": round(t2 - t1, 4)} if timings else None
    return make_report(str(spec), a, tm), a.verdict.agrees


def format_report(r: Report) -> str:
    p = r.profile
    lines = [f"group {r.spec}  (order {r.order}, {r.subgroups if r.subgroups is not None else '>limit'} subgroups)"]
    flags = [k for k in ("is_abelian", "is_cyclic", "is_nilpotent", "is_hamiltonian", "has_cyclic_maximal",
                         "is_metacyclic", "order_spectrum_ok") if p[k]]
    lines.append("  profile: " + ", ".join(flags) + (f"; p-group, p={p['p_group']}" if p["p_group"] else ""))
    if p["abelian_invariants"] is not None:
        lines.append(f"  invariants: {p['abelian_invariants']}")
    pr = r.predicted
    lines.append(f"  predicted: {pr['verdict']}" + (f" by {pr['rule']}" if pr["rule"] else ""))
    c = r.computed
    lines.append(f"  computed:  {c['verdict']} ({c['note']})")
    w = c.get("witness")
    if w and w["kind"] == "crown":
        xs = c.get("crown_subgroups")
        if xs:
            lines.append("  crown (x1, y1, x2, y2, ...): " + "  ".join(xs))
        else:
            pairs = [f"{x} <= {y}" for x, y in zip(w["x_labels"], w["y_labels"])]
            lines.append("  crown: " + ";  ".join(pairs))
    elif w and w["kind"] == "elimination":
        lines.append("  elimination order: " + ", ".join(w.get("labels") or map(str, w["order"])))
    if pr["verdict"] not in (UNKNOWN, c["verdict"]) and c["verdict"] != UNKNOWN:
        lines.append("  DISAGREEMENT between prediction and computation")
    return "\n".join(lines) + "\n"


def cmd_survey(spec_text: str, min_order: int = 1, order_cap: int = DEFAULT_ORDER_CAP,
               subgroup_limit: int = DEFAULT_SUBGROUP_LIMIT, crown_bound: int | None = None) -> Survey:
    """One row per conjugacy class of subgroups of the ambient group."""
    spec = parse_spec(spec_text)
    g = build_group(spec, order_cap)
    lat = build_lattice(g, limit=subgroup_limit)
    survey = Survey(str(spec))
    for cls in subgroup_conjugacy_classes(g, lat):
        rep = lat.nodes[cls[0]]
        if rep.size < min_order:
            continue
        h = subgroup_as_group(g, rep, name=rep.label(g))
        a = analyze(h, subgroup_limit=subgroup_limit, crown_bound=crown_bound)
        _checked_witness(a)
        comp = a.verdict.computed.verdict
        pred = a.verdict.predicted
        survey.rows.append(SurveyRow(
            ambient=str(spec),
            representative=rep.label(g),
            order=rep.size,
            class_size=len(cls),
            computed_in_d=None if comp == UNKNOWN else comp == IN_D,
            is_metacyclic=a.profile.is_metacyclic,
            predicted=f"{pred.verdict} ({pred.rule})" if pred.rule else UNKNOWN,
        ))
    return survey


def format_survey(s: Survey) -> str:
    lines = [f"survey of {s.ambient}: one row per conjugacy class of subgroups",
             "note: distinct classes may be isomorphic as abstract groups; no isomorphism dedup is done",
             "order  verdict metacyclic  predicted                    class representative"]
    lines += [r.line() for r in s.rows]
    bad = s.counterexamples
    in_d = sum(1 for r in s.rows if r.computed_in_d)
    lines.append(f"{len(s.rows)} classes, {in_d} with dismantlable subgroup lattice")
    if bad:
        lines.append("!!! counterexample to open problem: yes -- members that are not metacyclic:")
        lines += ["!!!   " + r.representative for r in bad]
    else:
        lines.append("counterexample to open problem: no (every member found is metacyclic; "
                     "consistent with the open problem)")
    return "\n".join(lines) + "\n"


def cmd_export(spec_text: str, fmt: str, order_cap: int = DEFAULT_ORDER_CAP,
               subgroup_limit: int = DEFAULT_SUBGROUP_LIMIT, crown_bound: int | None = None) -> str:
    if fmt == "dot":
        spec = parse_spec(spec_text)
        g = build_group(spec, order_cap)
        return to_dot(build_lattice(g, limit=subgroup_limit), g, name=str(spec))
    if fmt == "json":
        report, _ = cmd_check(spec_text, order_cap, subgroup_limit, crown_bound)
        return report.to_json()
    raise ValueError(f"unknown format {fmt!r}")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dismantlable",
                                 description="Subgroup lattices and their dismantlability.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order-cap", type=int, default=None, help="largest group order to build")
    common.add_argument("--subgroup-limit", type=int, default=None, help="abort enumeration past this count")
    common.add_argument("--crown-bound", type=int, default=None, help="largest crown order searched")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", parents=[common], help="analyze one group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--timings", action="store_true", help="include timings (output no longer byte-stable)")

    p = sub.add_parser("verify-paper", parents=[common], help="run the theorem suite")
    p.add_argument("--dihedral-max", type=int, default=48)
    p.add_argument("--abelian-max", type=int, default=128)
    p.add_argument("--two-group-max", type=int, default=64)
    p.add_argument("--random-lattices", type=int, default=500)

    p = sub.add_parser("survey", parents=[common], help="membership of every subgroup class")
    p.add_argument("spec", nargs="?", default="S:4")
    p.add_argument("--min-order", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help=f"permit ambient groups above order {LARGE_AMBIENT_ORDER}")

    p = sub.add_parser("export", parents=[common], help="write the Hasse diagram or report")
    p.add_argument("spec")
    p.add_argument("--format", choices=("dot", "json"), required=True)
    p.add_argument("--out", default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    order_cap, limit, bound = _caps(args)
    out = sys.stdout
    try:
        if args.cmd == "check":
            report, agrees = cmd_check(args.spec, order_cap, limit, bound, args.timings)
            out.write(report.to_json() if args.json else format_report(report))
            return 0 if agrees else 1
        if args.cmd == "verify-paper":
            b = Bounds(dihedral_max=args.dihedral_max, abelian_max=args.abelian_max,
                       two_group_max=args.two_group_max, random_lattices=args.random_lattices,
                       subgroup_limit=args.subgroup_limit or Bounds().subgroup_limit)
            rows = verify_paper(b)
            for r in rows:
                out.write(r.line() + "\n")
            failed = sum(not r.passed for r in rows)
            out.write(f"{len(rows) - failed}/{len(rows)} checks passed\n")
            return 0 if not failed else 1
        if args.cmd == "survey":
            cap = order_cap if not args.allow_large else max(order_cap, 10 ** 4)
            if not args.allow_large:
                cap = min(cap, max(LARGE_AMBIENT_ORDER, order_cap))
            out.write(format_survey(cmd_survey(args.spec, args.min_order, cap, limit, bound)))
            return 0
        if args.cmd == "export":
            text = cmd_export(args.spec, args.format, order_cap, limit, bound)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                out.write(text)
            return 0
    except (GroupError, SubgroupLimitExceeded, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
