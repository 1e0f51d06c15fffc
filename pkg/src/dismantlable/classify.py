"""Group predicates and membership in the class of groups with dismantlable L(G).

Two routes decide membership.  :func:`predicted_membership` applies the known
classification results to a :class:`GroupProfile`; :func:`computed_membership`
dismantles the subgroup lattice itself and returns a certificate.  Where the
prediction is not ``Unknown`` the two must agree.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .algorithms import (Crown, DismantlingWitness, NotDismantlable, crown_relations_ok, dismantle,
                         find_crown, validate_crown, verify_dismantling_witness)
from .groups import Group, GroupError, factorize, prime_power_base, quotient_group
from .lattice import Lattice
from .subgroups import (DEFAULT_SUBGROUP_LIMIT, SubgroupLimitExceeded, SubgroupSet, build_lattice,
                        cyclic_subgroups, generated_subgroup, indices_to_bits, is_normal, subgroup_as_group)

IN_D = "InD"
NOT_IN_D = "NotInD"
UNKNOWN = "Unknown"

# rule tags, in ladder order
R_SPECTRUM = "element-orders"
R_ABELIAN = "abelian-classification"
R_HAMILTONIAN = "hamiltonian-only-q8"
R_CYCLIC_MAXIMAL = "cyclic-maximal-p-group"
R_NILPOTENT = "nilpotent-necessary"
R_PPP = "ppp-section"
R_DIHEDRAL = "dihedral-prime-power"
R_ALT_SYM = "alternating-symmetric"


@dataclass(frozen=True)
class GroupProfile:
    order: int
    is_abelian: bool
    is_cyclic: bool
    p_group: int | None
    is_nilpotent: bool
    is_hamiltonian: bool
    has_cyclic_maximal: bool
    abelian_invariants: tuple[int, ...] | None
    abelian_p_rank: int | None
    order_spectrum_ok: bool
    is_metacyclic: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["abelian_invariants"] is not None:
            d["abelian_invariants"] = list(d["abelian_invariants"])
        return d


def _check_pair(g: Group, lat: Lattice | None) -> None:
    if lat is None:
        return
    if lat.group is not None and lat.group is not g:
        top = lat.nodes[lat.top]
        if not isinstance(top, SubgroupSet) or top.size != g.order or top.ambient_order != g.order:
            raise GroupError("lattice was not built from this group")


def is_cyclic_group(g: Group) -> bool:
    return int(g.element_order.max()) == g.order


def spectrum_ok(g: Group) -> bool:
    """Every element order is a prime power or a product of two prime powers."""
    return all(len(factorize(int(k))) <= 2 for k in set(g.element_order.tolist()))


def _sylow_order(order: int, p: int) -> int:
    return p ** factorize(order).get(p, 0)


def is_nilpotent(g: Group, lat: Lattice | None = None) -> bool:
    """Every Sylow subgroup is normal, i.e. unique."""
    for p in factorize(g.order):
        size = _sylow_order(g.order, p)
        if lat is not None:
            count = sum(1 for s in lat.nodes if s.size == size)
        else:
            # the p-elements form one Sylow subgroup iff there are exactly |P| of them
            count = 1 if _p_element_count(g, p) == size else 2
        if count != 1:
            return False
    return True


def _p_element_count(g: Group, p: int) -> int:
    return sum(1 for k in g.element_order.tolist() if k == 1 or prime_power_base(k) == p)


def abelian_invariants(g: Group) -> tuple[int, ...]:
    """Invariant factors d1 >= d2 >= ... (each divisible by the next) of an abelian group."""
    orders = g.element_order
    per_prime: dict[int, list[int]] = {}
    for p, a in factorize(g.order).items():
        counts = [1]
        for k in range(1, a + 1):
            counts.append(int(np.sum(p ** k % orders == 0)))
        # number of cyclic p-factors of exponent >= k is log_p(counts[k] / counts[k-1])
        at_least = [round(math.log(counts[k] / counts[k - 1], p)) for k in range(1, a + 1)]
        exps = []
        for k in range(1, a + 1):
            ge = at_least[k - 1]
            gt = at_least[k] if k < a else 0
            exps.extend([k] * (ge - gt))
        per_prime[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in per_prime.values()), default=0)
    out = []
    for i in range(width):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        out.append(d)
    return tuple(out)


def is_metacyclic(g: Group, lat: Lattice | None = None) -> bool:
    """Some normal cyclic subgroup has a cyclic quotient."""
    if lat is not None:
        candidates = [s for s in lat.nodes if _subgroup_is_cyclic(g, s)]
    else:
        candidates = cyclic_subgroups(g)
    for n in candidates:
        if not is_normal(g, n):
            continue
        q = quotient_group(g, n.members())
        if is_cyclic_group(q):
            return True
    return False


def _subgroup_is_cyclic(g: Group, s: SubgroupSet) -> bool:
    return int(g.element_order[s.members()].max()) == s.size


def _has_cyclic_maximal(g: Group, lat: Lattice | None) -> bool:
    if lat is not None:
        return any(_subgroup_is_cyclic(g, lat.nodes[c]) for c in lat.lower_covers(lat.top))
    everything = (1 << g.order) - 1
    for c in cyclic_subgroups(g):
        if c.bits == everything:
            continue
        outside = [h for h in range(g.order) if h not in c]
        if all(generated_subgroup(g, [*c.members(), h]).bits == everything for h in outside):
            return True
    return False


def _is_hamiltonian(g: Group, abelian: bool, lat: Lattice | None) -> bool:
    if abelian:
        return False
    subs = lat.nodes if lat is not None else cyclic_subgroups(g)
    return all(is_normal(g, s) for s in subs)


def profile(g: Group, lat: Lattice | None = None) -> GroupProfile:
    _check_pair(g, lat)
    abelian = g.is_abelian()
    p = prime_power_base(g.order)
    inv = abelian_invariants(g) if abelian else None
    rank = None
    if abelian and p is not None:
        rank = round(math.log(int(np.sum(p % g.element_order == 0)), p))
    return GroupProfile(
        order=g.order,
        is_abelian=abelian,
        is_cyclic=is_cyclic_group(g),
        p_group=p,
        is_nilpotent=is_nilpotent(g, lat),
        is_hamiltonian=_is_hamiltonian(g, abelian, lat),
        has_cyclic_maximal=_has_cyclic_maximal(g, lat),
        abelian_invariants=inv,
        abelian_p_rank=rank,
        order_spectrum_ok=spectrum_ok(g),
        is_metacyclic=is_metacyclic(g, lat),
    )


def has_section_ppp(g: Group, lat: Lattice, p: int) -> bool:
    """Is there K normal in H (both subgroups) with H/K elementary abelian of order p^3?"""
    nodes = lat.nodes
    leq = lat.leq
    for hi, h in enumerate(nodes):
        if h.size % p ** 3:
            continue
        want = h.size // p ** 3
        hg = None
        for ki in np.flatnonzero(leq[:, hi]):
            k = nodes[ki]
            if k.size != want:
                continue
            if hg is None:
                hg = subgroup_as_group(g, h)
                pos = {int(x): i for i, x in enumerate(h.members())}
            kk = SubgroupSet(indices_to_bits(pos[int(x)] for x in k.members()), h.size)
            if not is_normal(hg, kk):
                continue
            q = quotient_group(hg, kk.members())
            if q.is_abelian() and int(q.element_order.max()) == p:
                return True
    return False


def dihedral_half_order(g: Group) -> int | None:
    """n when g is dihedral of order 2n with n >= 3: a cyclic subgroup of index 2
    inverted by an involution outside it."""
    n = g.order // 2
    if g.order % 2 or n < 3:
        return None
    t = g.table
    for a in np.flatnonzero(g.element_order == n):
        a = int(a)
        cyc = generated_subgroup(g, [a])
        a_inv = int(g.inverse[a])
        for y in np.flatnonzero(g.element_order == 2):
            y = int(y)
            if y not in cyc and int(t[t[y, a], y]) == a_inv:
                return n
    return None


@dataclass(frozen=True)
class Prediction:
    verdict: str
    rule: str | None
    fired: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "fired": [list(f) for f in self.fired]}


def _abelian_in_d(prof: GroupProfile) -> bool:
    if prof.is_cyclic:
        return prof.order == 1 or len(factorize(prof.order)) <= 2
    return prof.p_group is not None and prof.abelian_p_rank is not None and prof.abelian_p_rank <= 2


def predicted_membership(g: Group, prof: GroupProfile, lat: Lattice | None = None) -> Prediction:
    """Run the decision ladder; the first rule that applies sets the verdict.

    Later rules that also apply are recorded in ``fired`` so callers can see
    every result that bears on the group.  The (p,p,p)-section rule needs the
    lattice and is skipped without one.
    """
    fired: list[tuple[str, str]] = []
    if not prof.order_spectrum_ok:
        fired.append((R_SPECTRUM, NOT_IN_D))
    if prof.is_abelian:
        fired.append((R_ABELIAN, IN_D if _abelian_in_d(prof) else NOT_IN_D))
    if prof.is_hamiltonian:
        q8 = prof.order == 8 and int(np.sum(g.element_order == 2)) == 1
        fired.append((R_HAMILTONIAN, IN_D if q8 else NOT_IN_D))
    if prof.p_group is not None and prof.has_cyclic_maximal:
        fired.append((R_CYCLIC_MAXIMAL, IN_D))
    if prof.is_nilpotent and prof.p_group is None and not prof.is_cyclic and prof.order > 1:
        fired.append((R_NILPOTENT, NOT_IN_D))
    if prof.p_group is not None and lat is not None and not prof.has_cyclic_maximal:
        if has_section_ppp(g, lat, prof.p_group):
            fired.append((R_PPP, NOT_IN_D))
    n = dihedral_half_order(g)
    if n is not None:
        fired.append((R_DIHEDRAL, IN_D if prime_power_base(n) is not None else NOT_IN_D))
    if g.tag and g.tag[0] in ("A", "S") and len(g.tag) == 2:
        limit = 4 if g.tag[0] == "A" else 3
        fired.append((R_ALT_SYM, IN_D if g.tag[1] <= limit else NOT_IN_D))
    if not fired:
        return Prediction(UNKNOWN, None, ())
    return Prediction(fired[0][1], fired[0][0], tuple(fired))


@dataclass
class ComputedVerdict:
    """Result of actually dismantling L(G).

    ``witness`` lives in ``lattice``; for certificates found inside a proper
    subgroup H, ``lattice`` is L(H) and ``crown_subgroups`` lists the crown
    as subgroups of the ambient group.
    """

    verdict: str
    witness: DismantlingWitness | Crown | NotDismantlable | None
    lattice: Lattice | None
    note: str = ""
    crown_subgroups: tuple[SubgroupSet, ...] | None = None
    certificate_group: Group | None = field(default=None, repr=False)

    def to_dict(self, g: Group | None = None) -> dict:
        d: dict = {"verdict": self.verdict, "note": self.note}
        if self.witness is not None:
            d["witness"] = self.witness.to_dict(self.lattice)
        if self.crown_subgroups is not None and g is not None:
            d["crown_subgroups"] = [s.label(g) for s in self.crown_subgroups]
        return d


def crown_in_group_ok(crown_subgroups: tuple[SubgroupSet, ...]) -> bool:
    """Validate a crown (x1, y1, x2, y2, ...) directly by inclusion of subgroups."""
    xs = crown_subgroups[0::2]
    ys = crown_subgroups[1::2]
    return crown_relations_ok(lambda a, b: a <= b, xs, ys)


def computed_membership(g: Group, lat: Lattice | None = None, *,
                        subgroup_limit: int = DEFAULT_SUBGROUP_LIMIT,
                        crown_bound: int | None = None) -> ComputedVerdict:
    """Dismantle L(G); on failure look for a crown certificate.

    When L(G) has more than ``subgroup_limit`` subgroups, proper subgroups
    generated by at most three cyclic subgroups are searched instead: a crown
    in L(H) is a crown in L(G), because both are ordered by inclusion.
    """
    if lat is None:
        try:
            lat = build_lattice(g, limit=subgroup_limit)
        except SubgroupLimitExceeded as exc:
            return _subgroup_certificate(g, subgroup_limit, crown_bound, exc)
    res = dismantle(lat)
    if isinstance(res, DismantlingWitness):
        if not verify_dismantling_witness(lat, res):
            raise AssertionError("dismantling witness failed verification")
        return ComputedVerdict(IN_D, res, lat, note="elimination order")
    crown = find_crown(lat, crown_bound)
    if crown is None:
        return ComputedVerdict(NOT_IN_D, res, lat, note="no crown witness under bound")
    if not validate_crown(lat, crown):
        raise AssertionError("crown failed validation")
    subs = tuple(lat.nodes[i] for i in crown.nodes())
    return ComputedVerdict(NOT_IN_D, crown, lat, note=f"crown of order {crown.order}", crown_subgroups=subs)


def _subgroup_certificate(g: Group, limit: int, crown_bound: int | None, exc: Exception) -> ComputedVerdict:
    cyclics = [c for c in cyclic_subgroups(g) if c.size > 1]
    seen: set[int] = set()
    everything = (1 << g.order) - 1
    for r in (1, 2, 3):
        for combo in combinations(cyclics, r):
            seed = [x for c in combo for x in c.generators]
            h = generated_subgroup(g, seed)
            if h.bits in seen or h.bits == everything:
                continue
            seen.add(h.bits)
            hg = subgroup_as_group(g, h)
            try:
                hl = build_lattice(hg, limit=limit)
            except SubgroupLimitExceeded:
                continue
            if isinstance(dismantle(hl), DismantlingWitness):
                continue
            crown = find_crown(hl, crown_bound)
            if crown is None or not validate_crown(hl, crown):
                continue
            members = h.members()
            lifted = []
            for i in crown.nodes():
                s = hl.nodes[i]
                lifted.append(SubgroupSet(indices_to_bits(members[s.members()]), g.order,
                                          tuple(int(members[x]) for x in s.generators)))
            lifted = tuple(lifted)
            if not crown_in_group_ok(lifted):
                raise AssertionError("lifted crown failed validation")
            return ComputedVerdict(NOT_IN_D, crown, hl,
                                   note=f"crown of order {crown.order} inside subgroup {h.label(g)} ({exc})",
                                   crown_subgroups=lifted, certificate_group=hg)
    return ComputedVerdict(UNKNOWN, None, None, note=f"undetermined: {exc}")


@dataclass
class MembershipVerdict:
    predicted: Prediction
    computed: ComputedVerdict

    @property
    def agrees(self) -> bool:
        p, c = self.predicted.verdict, self.computed.verdict
        return p == UNKNOWN or c == UNKNOWN or p == c


@dataclass
class Analysis:
    """Everything known about one group."""

    group: Group
    lattice: Lattice | None
    profile: GroupProfile
    verdict: MembershipVerdict


def analyze(g: Group, *, subgroup_limit: int = DEFAULT_SUBGROUP_LIMIT,
            crown_bound: int | None = None) -> Analysis:
    try:
        lat = build_lattice(g, limit=subgroup_limit)
    except SubgroupLimitExceeded as exc:
        lat = None
        comp = _subgroup_certificate(g, subgroup_limit, crown_bound, exc)
    else:
        comp = computed_membership(g, lat, crown_bound=crown_bound)
    prof = profile(g, lat)
    pred = predicted_membership(g, prof, lat)
    return Analysis(g, lat, prof, MembershipVerdict(pred, comp))
