"""Finite lattices with eager meet/join tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np


class NotALattice(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Lattice:
    """A finite lattice on nodes ``0 .. n-1``.

    ``leq[a, b]`` is the order, ``meet``/``join`` are full index tables and
    ``covers[a]`` lists the upper covers of ``a``.  ``nodes`` carries the
    payload of each node (subgroups, labels, anything).
    """

    leq: np.ndarray
    meet: np.ndarray
    join: np.ndarray
    covers: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    nodes: tuple[Any, ...] = ()
    group: Any = None
    _masks: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return int(self.leq.shape[0])

    @property
    def size(self) -> int:
        return len(self)

    def lower_covers(self, a: int) -> list[int]:
        return [b for b in range(len(self)) if a in self.covers[b]]

    def up_mask(self, a: int) -> int:
        """Nodes >= a as an int bitmask."""
        return self._bitrows("up")[a]

    def down_mask(self, a: int) -> int:
        return self._bitrows("down")[a]

    def incomparable_mask(self, a: int) -> int:
        return self._bitrows("inc")[a]

    def _bitrows(self, kind: str) -> list[int]:
        rows = self._masks.get(kind)
        if rows is None:
            if kind == "up":
                mat = self.leq
            elif kind == "down":
                mat = self.leq.T
            else:
                mat = ~(self.leq | self.leq.T)
            rows = bool_rows_to_ints(mat)
            self._masks[kind] = rows
        return rows

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


def bool_rows_to_ints(mat: np.ndarray) -> list[int]:
    """Row i of a boolean matrix as an int whose bit j is mat[i, j]."""
    mat = np.asarray(mat, dtype=bool)
    if mat.shape[1] == 0:
        return [0] * mat.shape[0]
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def lattice_from_leq(leq, nodes: Sequence[Any] | None = None, group: Any = None) -> Lattice:
    """Build meet/join/covers from a partial order matrix.

    Raises :class:`NotALattice` when some pair lacks a meet or join.
    """
    leq = np.array(leq, dtype=bool)
    n = leq.shape[0]
    if leq.shape != (n, n):
        raise NotALattice("order matrix must be square")
    if n == 0:
        empty = np.zeros((0, 0), dtype=np.int32)
        return Lattice(leq=leq, meet=empty, join=empty.copy(), covers=(), bottom=-1, top=-1,
                       nodes=tuple(nodes or ()), group=group)
    if not leq.diagonal().all():
        raise NotALattice("order is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise NotALattice("order is not antisymmetric")
    li = leq.astype(np.float32)
    if ((li @ li > 0) & ~leq).any():
        raise NotALattice("order is not transitive")

    # linear extension: by number of elements below
    rank = leq.sum(axis=0)
    perm = np.lexsort((np.arange(n), rank))
    pos = np.empty(n, dtype=np.int64)
    pos[perm] = np.arange(n)
    lp = leq[np.ix_(perm, perm)]            # order in linear-extension positions
    down = bool_rows_to_ints(lp.T)          # down[i]: positions <= i
    up = bool_rows_to_ints(lp)
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        di, ui = down[i], up[i]
        meet[i, i] = join[i, i] = i
        for j in range(i + 1, n):
            common = di & down[j]
            if not common:
                raise NotALattice("pair without lower bound")
            m = common.bit_length() - 1
            if common & ~down[m]:
                raise NotALattice("pair without greatest lower bound")
            upper = ui & up[j]
            if not upper:
                raise NotALattice("pair without upper bound")
            k = (upper & -upper).bit_length() - 1
            if upper & ~up[k]:
                raise NotALattice("pair without least upper bound")
            meet[i, j] = meet[j, i] = m
            join[i, j] = join[j, i] = k
    # back to caller's numbering
    meet = perm[meet][np.ix_(pos, pos)].astype(np.int32)
    join = perm[join][np.ix_(pos, pos)].astype(np.int32)
    return _finish(leq, meet, join, nodes, group)


def _finish(leq, meet, join, nodes, group) -> Lattice:
    n = leq.shape[0]
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    covers = transitive_reduction(leq)
    for arr in (leq, meet, join):
        arr.setflags(write=False)
    if nodes is None:
        nodes = tuple(range(n))
    return Lattice(leq=leq, meet=meet, join=join, covers=covers, bottom=bottom, top=top,
                   nodes=tuple(nodes), group=group)


def transitive_reduction(leq: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Upper covers of each node: b covers a iff a < b with nothing strictly between."""
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    si = strict.astype(np.float32)
    # a < c < b exists iff (strict @ strict)[a, b] > 0
    between = (si @ si) > 0
    cov = strict & ~between
    return tuple(tuple(int(b) for b in np.flatnonzero(cov[a])) for a in range(n))


def lattice_from_sets(sets: Sequence[int], nodes: Sequence[Any] | None = None, group: Any = None) -> Lattice:
    """Lattice of bitmask sets ordered by inclusion (must be a lattice)."""
    n = len(sets)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            leq[i, j] = (a & ~b) == 0
    return lattice_from_leq(leq, nodes if nodes is not None else list(sets), group)


def chain(k: int) -> Lattice:
    leq = np.triu(np.ones((k, k), dtype=bool))
    return lattice_from_leq(leq)


def boolean_lattice(rank: int) -> Lattice:
    return lattice_from_sets(list(range(1 << rank)))


def pentagon() -> Lattice:
    """N5: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a, c."""
    rel = {(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)}
    return lattice_from_covers(5, rel)


def diamond() -> Lattice:
    """M3: bottom, three atoms, top."""
    rel = {(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)}
    return lattice_from_covers(5, rel)


def lattice_from_covers(n: int, covers: set[tuple[int, int]] | Sequence[tuple[int, int]]) -> Lattice:
    leq = np.eye(n, dtype=bool)
    for a, b in covers:
        leq[a, b] = True
    # Warshall
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return lattice_from_leq(leq)


def random_lattice(rng: np.random.Generator, max_nodes: int = 12, ground: int | None = None) -> Lattice:
    """A random lattice realized as an intersection-closed family of subsets.

    Every finite lattice arises this way, so the generator reaches all shapes
    up to ``max_nodes``; rejection sampling keeps the size bounded.
    """
    while True:
        k = ground if ground is not None else int(rng.integers(2, 6))
        full = (1 << k) - 1
        fam = {full}
        for _ in range(int(rng.integers(1, max_nodes + 1))):
            fam.add(int(rng.integers(0, full + 1)))
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    c = a & b
                    if c not in fam:
                        fam.add(c)
                        changed = True
        if len(fam) <= max_nodes:
            return lattice_from_sets(sorted(fam, key=lambda s: (bin(s).count("1"), s)))
