"""Fixture groups and the theorem-by-theorem verification suite."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algorithms import (Crown, DismantlingWitness, brute_force_dismantlable, dismantle, find_boolean_cube,
                         find_crown, has_two_incomparable_removable, lattice_laws, validate_crown)
from .classify import (IN_D, NOT_IN_D, UNKNOWN, Analysis, analyze, has_section_ppp)
from .dsl import parse_spec
from .groups import Group, build_group, factorize, prime_power_base
from .lattice import Lattice, random_lattice
from .subgroups import brute_force_subgroups, frattini_subgroup, generated_subgroup, node_of

CORPUS_SUBGROUP_LIMIT = 1000

# generators exactly as printed for the two order-6 crowns (x1, y1, x2, y2, x3, y3)
A5_CROWN = (["(12)(34)"], ["(125)", "(12)(34)"], ["(25)(34)"], ["(143)", "(25)(34)"],
            ["(13)(25)"], ["(15234)", "(13)(25)"])
S4_CROWN = (["(12)"], ["(123)", "(12)"], ["(13)"], ["(134)", "(13)"], ["(14)"], ["(124)", "(14)"])


@dataclass
class Bounds:
    dihedral_max: int = 48
    abelian_max: int = 128
    two_group_max: int = 64
    random_lattices: int = 500
    seed: int = 20240601
    subgroup_limit: int = CORPUS_SUBGROUP_LIMIT


def crown_from_generators(g: Group, lat: Lattice, gens: tuple[list[str], ...]) -> Crown:
    nodes = [node_of(lat, generated_subgroup(g, [g.find(x) for x in words])) for words in gens]
    return Crown(xs=tuple(nodes[0::2]), ys=tuple(nodes[1::2]))


def dihedral_proof_crown(g: Group, lat: Lattice, n: int) -> Crown:
    """The order-6 crown in L(D_2n) for n = 2^k p^m with k, m >= 1 and p odd."""
    f = factorize(n)
    k = f.get(2, 0)
    odd = [p for p in f if p != 2]
    if k < 1 or len(odd) != 1:
        raise ValueError("needs n = 2^k p^m with k, m >= 1")
    pm = n // 2 ** k
    x = lambda e: g.index_of((e % n, 0))
    y = g.index_of((0, 1))
    seqs = [[x(2 ** (k - 1) * pm)], [x(2 ** (k - 1) * pm), y], [y], [x(2 ** k), y], [x(2 ** k)], [x(1)]]
    nodes = [node_of(lat, generated_subgroup(g, s)) for s in seqs]
    return Crown(xs=tuple(nodes[0::2]), ys=tuple(nodes[1::2]))


def abelian_invariant_lists(max_order: int) -> list[tuple[int, ...]]:
    """Every invariant-factor list d1, d2, ... (d_{i+1} | d_i) with product <= max_order."""
    out = []

    def rec(prefix: tuple[int, ...], remaining: int):
        last = prefix[-1]
        for d in range(2, min(last, remaining) + 1):
            if last % d == 0:
                nxt = prefix + (d,)
                out.append(nxt)
                rec(nxt, remaining // d)

    out.append((1,))
    for d1 in range(2, max_order + 1):
        out.append((d1,))
        rec((d1,), max_order // d1)
    return sorted(out, key=lambda t: (math.prod(t), t))


def corpus_specs(b: Bounds) -> list[str]:
    specs = ["A:3", "A:4", "S:3", "A:5", "S:4", "S:5"]
    specs += ["Ab:" + ",".join(map(str, inv)) for inv in abelian_invariant_lists(b.abelian_max)]
    specs += [f"D:{2 * n}" for n in range(2, b.dihedral_max + 1)]
    specs += ["M:3,3", "M:3,4", "M:5,3", "M:2,4", "M:2,5"]
    specs += two_group_specs(b)
    specs += ["Ham:0", "Ham:1", "Ham:0;3", "Ham:1;3"]
    specs += ["SDP:7,3,1,2", "SDP:7,3,2,2", "SDP:5,2,2,4", "SDP:3,2,2,2", "Q:8 x Z:3", "Q:8 x Z:5",
              "D:8 x Z:3", "S:3 x Z:3", "Perm:5;(12345),(25)(34)"]
    return list(dict.fromkeys(specs))


def two_group_specs(b: Bounds) -> list[str]:
    out = []
    order = 8
    while order <= b.two_group_max:
        out += [f"D:{order}", f"Q:{order}"] + ([f"QD:{order}"] if order >= 16 else [])
        order *= 2
    return out


def analysis_for(spec: str, subgroup_limit: int = CORPUS_SUBGROUP_LIMIT) -> Analysis:
    """Cached analysis of a corpus spec."""
    return _cached_analysis(spec, subgroup_limit)


@lru_cache(maxsize=None)
def _cached_analysis(spec: str, subgroup_limit: int) -> Analysis:
    return analyze(build_group(parse_spec(spec)), subgroup_limit=subgroup_limit)


@dataclass
class Row:
    name: str
    passed: bool
    detail: str = ""
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _row(name: str, failures: list[str], detail: str) -> Row:
    if failures:
        detail = detail + "; failures: " + "; ".join(failures[:5])
    return Row(name, not failures, detail, failures)


def verify_paper(b: Bounds | None = None) -> list[Row]:
    """Run every check over the corpus; one Row per result being verified."""
    b = b or Bounds()
    specs = corpus_specs(b)
    res = {s: analysis_for(s, b.subgroup_limit) for s in specs}
    computed = {s: a.verdict.computed.verdict for s, a in res.items()}
    rows: list[Row] = []

    undetermined = [s for s, v in computed.items() if v == UNKNOWN]
    rows.append(_row("corpus-decided", undetermined, f"{len(specs)} groups, every verdict computed"))

    disagree = [s for s, a in res.items() if not a.verdict.agrees]
    known = sum(1 for a in res.values() if a.verdict.predicted.verdict != UNKNOWN)
    rows.append(_row("prediction-agreement", disagree, f"{known} predicted verdicts equal the computed ones"))

    want = {"A:3": IN_D, "A:4": IN_D, "S:3": IN_D, "A:5": NOT_IN_D, "S:4": NOT_IN_D, "S:5": NOT_IN_D}
    bad = [f"{s} computed {computed[s]}" for s, v in want.items() if computed[s] != v]
    rows.append(_row("alternating-symmetric", bad, "A3, A4, S3 in; A5, S4, S5 out"))

    bad = []
    for spec, gens in (("A:5", A5_CROWN), ("S:4", S4_CROWN)):
        a = res[spec]
        if not validate_crown(a.lattice, crown_from_generators(a.group, a.lattice, gens)):
            bad.append(spec)
    rows.append(_row("explicit-crowns", bad, "printed A5 and S4 sextuples are crowns"))

    ab = [s for s in specs if s.startswith("Ab:")]
    bad = [s for s in ab if res[s].verdict.predicted.verdict != computed[s]]
    rows.append(_row("abelian-classification", bad, f"{len(ab)} abelian groups of order <= {b.abelian_max}"))

    bad = []
    for n in range(2, b.dihedral_max + 1):
        s = f"D:{2 * n}"
        if (computed[s] == IN_D) != (prime_power_base(n) is not None):
            bad.append(f"{s} computed {computed[s]}")
    a24 = analysis_for("D:24", b.subgroup_limit)
    if not validate_crown(a24.lattice, dihedral_proof_crown(a24.group, a24.lattice, 12)):
        bad.append("D:24 proof crown")
    rows.append(_row("dihedral-prime-power", bad, f"D_2n for 2 <= n <= {b.dihedral_max}, plus proof crown in D24"))

    cm = ["M:3,3", "M:3,4", "M:5,3", "M:2,4", "M:2,5"] + two_group_specs(b)
    bad = [s for s in cm if computed[s] != IN_D]
    bad += _frattini_failures(res, cm)
    rows.append(_row("cyclic-maximal-p-groups", bad, f"{len(cm)} groups in; |G:Phi(G)| = p^2 when non-cyclic"))

    ham = {"Ham:0": IN_D, "Ham:1": NOT_IN_D, "Ham:0;3": NOT_IN_D, "Ham:1;3": NOT_IN_D}
    bad = [s for s, v in ham.items() if computed[s] != v or not res[s].profile.is_hamiltonian]
    rows.append(_row("hamiltonian-only-q8", bad, "Q8 in; Q8xZ2, Q8xZ3, Q8xZ2xZ3 out"))

    bad = [s for s, v in computed.items() if v == IN_D and not res[s].profile.order_spectrum_ok]
    rows.append(_row("element-orders", bad, "every member has element orders p^n or p^n q^m"))

    rows.append(_nilpotent_row(res, computed))
    rows.append(_crown_equivalence_row(res))
    rows.append(_modular_row(res))
    rows.append(_seven_row(res, b))
    rows.append(_counts_row(res, b))
    rows.append(_greedy_row(res, b))
    return rows


def _frattini_failures(res: dict[str, Analysis], specs: list[str]) -> list[str]:
    bad = []
    for s in specs:
        a = res[s]
        if a.profile.is_cyclic:
            continue
        phi = frattini_subgroup(a.group, a.lattice)
        if a.group.order // phi.size != a.profile.p_group ** 2:
            bad.append(f"{s} |G:Phi| = {a.group.order // phi.size}")
    return bad


def _nilpotent_row(res, computed) -> Row:
    bad = []
    for s, a in res.items():
        prof = a.profile
        if computed[s] != IN_D or not prof.is_nilpotent:
            continue
        if prof.is_cyclic and len(factorize(prof.order)) <= 2:
            continue
        if prof.p_group is not None and not has_section_ppp(a.group, a.lattice, prof.p_group):
            continue
        bad.append(s)
    return _row("nilpotent-necessary", bad, "nilpotent members are cyclic p^n/p^n q^m or (p,p,p)-free p-groups")


def _lattices(res) -> dict[str, Lattice]:
    return {s: a.lattice for s, a in res.items() if a.lattice is not None}


def _crown_equivalence_row(res) -> Row:
    bad = []
    checked = 0
    for s, lat in _lattices(res).items():
        if len(lat) > 40:
            continue
        checked += 1
        stuck = not isinstance(dismantle(lat), DismantlingWitness)
        crown = find_crown(lat)
        if stuck != (crown is not None) or (crown is not None and not validate_crown(lat, crown)):
            bad.append(s)
    return _row("crown-equivalence", bad, f"{checked} lattices with <= 40 nodes: stuck iff a crown exists")


def _modular_row(res) -> Row:
    bad = []
    checked = 0
    for s, lat in _lattices(res).items():
        if not lattice_laws(lat).modular:
            continue
        checked += 1
        stuck = not isinstance(dismantle(lat), DismantlingWitness)
        c6 = find_crown(lat, 6) is not None
        cube = find_boolean_cube(lat) is not None
        if not (stuck == c6 == cube):
            bad.append(f"{s} stuck={stuck} crown6={c6} cube={cube}")
    return _row("modular-cube", bad, f"{checked} modular lattices: stuck iff order-6 crown iff 2^3")


def _seven_row(res, b: Bounds) -> Row:
    bad = []
    checked = 0
    for s, lat in _lattices(res).items():
        if len(lat) <= 7:
            checked += 1
            if not isinstance(dismantle(lat), DismantlingWitness):
                bad.append(s)
    rng = np.random.default_rng(b.seed)
    for i in range(b.random_lattices):
        lat = random_lattice(rng, 7)
        checked += 1
        if not isinstance(dismantle(lat), DismantlingWitness):
            bad.append(f"random #{i}")
    return _row("seven-elements", bad, f"{checked} lattices with <= 7 nodes all dismantlable")


def _divisor_sums(n: int) -> tuple[int, int]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return len(divs), sum(divs)


def _counts_row(res, b: Bounds) -> Row:
    bad = []
    for s, a in res.items():
        if s.startswith("Ab:") and a.profile.is_cyclic and a.lattice is not None:
            p = prime_power_base(a.group.order)
            if p is not None:
                k = round(math.log(a.group.order, p))
                if len(a.lattice) != k + 1:
                    bad.append(s)
    for n in range(2, b.dihedral_max + 1):
        tau, sigma = _divisor_sums(n)
        if len(res[f"D:{2 * n}"].lattice) != tau + sigma:
            bad.append(f"D:{2 * n}")
    s4 = res["S:4"]
    if len(s4.lattice) != 30 or len(brute_force_subgroups(s4.group)) != 30:
        bad.append("S:4")
    return _row("subgroup-counts", bad, "|L(Z_p^n)| = n+1, |L(D_2n)| = tau(n)+sigma(n), |L(S4)| = 30")


def _greedy_row(res, b: Bounds) -> Row:
    bad = []
    rng = np.random.default_rng(b.seed + 1)
    lats = [random_lattice(rng, 12) for _ in range(b.random_lattices)]
    lats += [lat for lat in _lattices(res).values() if len(lat) <= 12]
    outcomes = set()
    for i, lat in enumerate(lats):
        greedy = isinstance(dismantle(lat), DismantlingWitness)
        outcomes.add(greedy)
        if greedy != brute_force_dismantlable(lat):
            bad.append(f"lattice #{i}")
        if greedy and not lat.is_chain() and not has_two_incomparable_removable(lat):
            bad.append(f"lattice #{i}: fewer than two incomparable removable nodes")
    return _row("greedy-vs-oracle", bad, f"{len(lats)} lattices with <= 12 nodes; outcomes seen {sorted(outcomes)}")
