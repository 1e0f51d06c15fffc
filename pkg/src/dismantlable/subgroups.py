"""Subgroups of a Cayley-table group and the subgroup lattice L(G).

A subgroup is a :class:`SubgroupSet`: an ``int`` bitset over the element
indices of its ambient group.  Meet is bitwise AND, equality is bit equality,
and lattices list subgroups sorted by ``(size, bits)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .groups import Group, GroupError
from .lattice import Lattice, lattice_from_leq

DEFAULT_SUBGROUP_LIMIT = 20000


class SubgroupLimitExceeded(RuntimeError):
    def __init__(self, limit: int, count: int):
        super().__init__(f"more than {limit} subgroups (enumeration stopped at {count})")
        self.limit = limit
        self.count = count


def indices_to_bits(idx: Iterable[int]) -> int:
    bits = 0
    for i in idx:
        bits |= 1 << int(i)
    return bits


def bits_to_indices(bits: int) -> np.ndarray:
    if bits == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(bits.to_bytes((bits.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


@dataclass(frozen=True)
class SubgroupSet:
    bits: int
    ambient_order: int
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def members(self) -> np.ndarray:
        return bits_to_indices(self.bits)

    def __contains__(self, g: int) -> bool:
        return bool(self.bits >> int(g) & 1)

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.bits & ~other.bits == 0

    def __and__(self, other: "SubgroupSet") -> "SubgroupSet":
        return SubgroupSet(self.bits & other.bits, self.ambient_order)

    def sort_key(self) -> tuple[int, int]:
        return (self.size, self.bits)

    def label(self, g: Group) -> str:
        """``order:<generators>`` with generator labels from the ambient group."""
        gens = ", ".join(g.labels[x] for x in self.generators) if self.generators else "1"
        return f"{self.size}:<{gens}>"


def _closure(g: Group, seed: np.ndarray) -> np.ndarray:
    s = np.unique(np.concatenate(([0], np.asarray(seed, dtype=np.int64))))
    t = g.table
    while True:
        nxt = np.unique(t[np.ix_(s, s)])
        if len(nxt) == len(s):
            return s
        s = nxt


def generated_subgroup(g: Group, seed: Iterable[int]) -> SubgroupSet:
    """Smallest subgroup containing ``seed``."""
    seed = [int(x) for x in seed]
    for x in seed:
        if not 0 <= x < g.order:
            raise GroupError(f"element index {x} out of range")
    members = _closure(g, np.array(seed, dtype=np.int64))
    gens = tuple(x for x in dict.fromkeys(seed) if x != 0)
    return SubgroupSet(indices_to_bits(members), g.order, gens)


def is_subgroup(g: Group, h: SubgroupSet) -> bool:
    m = h.members()
    if len(m) == 0 or m[0] != 0:
        return False
    prod = g.table[np.ix_(m, m)]
    return indices_to_bits(np.unique(prod)) == h.bits


def cyclic_subgroups(g: Group) -> list[SubgroupSet]:
    """One entry per distinct <a>, generator = first element producing it."""
    seen: dict[int, SubgroupSet] = {}
    t = g.table
    for a in range(g.order):
        powers = [0]
        x = a
        while x != 0:
            powers.append(x)
            x = int(t[x, a])
        bits = indices_to_bits(powers)
        if bits not in seen:
            seen[bits] = SubgroupSet(bits, g.order, (a,) if a else ())
    return sorted(seen.values(), key=SubgroupSet.sort_key)


def all_subgroups(g: Group, limit: int = DEFAULT_SUBGROUP_LIMIT) -> list[SubgroupSet]:
    """Every subgroup of ``g``: cyclic seeds closed under joins to a fixpoint.

    Joining each found subgroup with each cyclic subgroup suffices, since any
    subgroup is the join of its cyclic subgroups.
    """
    cyclics = cyclic_subgroups(g)
    found: dict[int, SubgroupSet] = {c.bits: c for c in cyclics}
    work = list(cyclics)
    tried: set[int] = set()
    i = 0
    while i < len(work):
        h = work[i]
        i += 1
        hm = None
        for c in cyclics:
            if c.bits & ~h.bits == 0:
                continue
            union = h.bits | c.bits
            if union in tried or union in found:
                continue
            tried.add(union)
            if hm is None:
                hm = h.members()
            k = _closure(g, np.concatenate((hm, c.members())))
            bits = indices_to_bits(k)
            if bits not in found:
                sub = SubgroupSet(bits, g.order, h.generators + c.generators)
                found[bits] = sub
                work.append(sub)
                if len(found) > limit:
                    raise SubgroupLimitExceeded(limit, len(found))
    return sorted(found.values(), key=SubgroupSet.sort_key)


def brute_force_subgroups(g: Group) -> list[SubgroupSet]:
    """Independent oracle for small groups.

    Up to order 16 every subset containing the identity is tested for
    closure.  Up to order 64 every known subgroup is extended by every
    element, with closures taken on plain Python sets; each subgroup is
    reached by adding its generators one at a time.
    """
    n = g.order
    if n > 64:
        raise ValueError("brute-force subgroup enumeration is limited to order 64")
    t = g.table.tolist()
    if n <= 16:
        out = []
        for mask in range(1 << (n - 1)):
            bits = (mask << 1) | 1
            members = [i for i in range(n) if bits >> i & 1]
            if all(bits >> t[a][b] & 1 for a in members for b in members):
                out.append(SubgroupSet(bits, n))
        return sorted(out, key=SubgroupSet.sort_key)

    def close(seed: set[int]) -> frozenset[int]:
        h = set(seed) | {0}
        frontier = list(h)
        while frontier:
            new = {t[a][b] for a in frontier for b in list(h)} | {t[b][a] for a in frontier for b in list(h)}
            new -= h
            h |= new
            frontier = list(new)
        return frozenset(h)

    found = {frozenset({0})}
    todo = [frozenset({0})]
    while todo:
        h = todo.pop()
        for x in range(n):
            if x not in h:
                k = close(h | {x})
                if k not in found:
                    found.add(k)
                    todo.append(k)
    return sorted((SubgroupSet(indices_to_bits(sorted(h)), n) for h in found), key=SubgroupSet.sort_key)


def _leq_from_bits(subs: list[SubgroupSet], order: int) -> np.ndarray:
    n = len(subs)
    mat = np.zeros((n, order), dtype=np.float32)
    for i, s in enumerate(subs):
        mat[i, s.members()] = 1.0
    inter = mat @ mat.T
    sizes = mat.sum(axis=1)
    return inter == sizes[:, None]


def build_lattice(g: Group, subgroups: list[SubgroupSet] | None = None,
                  limit: int = DEFAULT_SUBGROUP_LIMIT) -> Lattice:
    """L(G) ordered by inclusion; node i is ``lattice.nodes[i]``."""
    if subgroups is None:
        subgroups = all_subgroups(g, limit)
    leq = _leq_from_bits(subgroups, g.order)
    return lattice_from_leq(leq, subgroups, group=g)


def node_of(lat: Lattice, h: SubgroupSet) -> int:
    index = lat._masks.get("node_index")
    if index is None:
        index = {s.bits: i for i, s in enumerate(lat.nodes)}
        lat._masks["node_index"] = index
    return index[h.bits]


def is_normal(g: Group, h: SubgroupSet) -> bool:
    if not is_subgroup(g, h):
        raise GroupError("not a subgroup")
    m = h.members()
    mask = np.zeros(g.order, dtype=bool)
    mask[m] = True
    t = g.table
    # conj[x, k] = x m_k x^-1
    conj = t[t[:, m], g.inverse[:, None]]
    return bool(mask[conj].all())


def frattini_subgroup(g: Group, lat: Lattice) -> SubgroupSet:
    """Intersection of the maximal subgroups (the whole group when trivial)."""
    top = lat.top
    coatoms = lat.lower_covers(top)
    bits = lat.nodes[top].bits
    for c in coatoms:
        bits &= lat.nodes[c].bits
    return lat.nodes[node_of(lat, SubgroupSet(bits, g.order))]


def conjugate_subgroup(g: Group, h: SubgroupSet, x: int) -> SubgroupSet:
    m = h.members()
    img = g.table[g.table[x, m], g.inverse[x]]
    return SubgroupSet(indices_to_bits(img), g.order)


def subgroup_conjugacy_classes(g: Group, lat: Lattice) -> list[list[int]]:
    """Orbits of the nodes under conjugation, each sorted; classes ordered by first node."""
    n = len(lat)
    cls = [-1] * n
    out: list[list[int]] = []
    t = g.table
    inv = g.inverse
    for i in range(n):
        if cls[i] >= 0:
            continue
        m = lat.nodes[i].members()
        orbit = set()
        for x in range(g.order):
            img = t[t[x, m], inv[x]]
            orbit.add(node_of(lat, SubgroupSet(indices_to_bits(img), g.order)))
        for j in orbit:
            cls[j] = len(out)
        out.append(sorted(orbit))
    return out


def subgroup_as_group(g: Group, h: SubgroupSet, name: str = "") -> Group:
    """The subgroup as a group in its own right (element 0 stays the identity)."""
    m = h.members()
    pos = np.full(g.order, -1, dtype=np.int64)
    pos[m] = np.arange(len(m))
    table = pos[g.table[np.ix_(m, m)]]
    elements = tuple(g.elements[i] for i in m) if g.elements is not None else None
    tag = ("perm", g.tag[1]) if g.tag and g.tag[0] in ("perm", "S", "A") else ("sub",)
    return Group(table=table, labels=tuple(g.labels[i] for i in m),
                 name=name or f"{h.label(g)} in {g.name}", elements=elements, tag=tag)


def to_dot(lat: Lattice, g: Group | None = None, name: str = "L") -> str:
    """Hasse diagram in DOT; bottom drawn lowest, node order = lattice order."""
    g = g if g is not None else lat.group
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, node in enumerate(lat.nodes):
        text = node.label(g) if isinstance(node, SubgroupSet) and g is not None else str(node)
        text = text.replace('"', '\\"')
        lines.append(f'  n{i} [label="{text}"];')
    for a, ups in enumerate(lat.covers):
        for b in ups:
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
