"""Dismantlability, crowns, lattice laws and the boolean cube.

All functions take a :class:`~dismantlable.lattice.Lattice` and refer to its
nodes by index.  Nothing here knows about groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .lattice import Lattice

BRUTE_FORCE_CAP = 12
EXHAUSTIVE_CROWN_NODES = 40


# ---------------------------------------------------------------------------
# dismantling


@dataclass(frozen=True)
class DismantlingWitness:
    """Elimination order: after removing any prefix the rest is a sublattice."""

    elimination: tuple[int, ...]

    def to_dict(self, lat: Lattice | None = None) -> dict:
        out = {"kind": "elimination", "order": list(self.elimination)}
        if lat is not None:
            out["labels"] = [node_label(lat, i) for i in self.elimination]
        return out


@dataclass(frozen=True)
class NotDismantlable:
    """Greedy elimination got stuck: ``stuck`` is a sublattice with no removable node."""

    stuck: tuple[int, ...]
    eliminated: tuple[int, ...] = ()

    def to_dict(self, lat: Lattice | None = None) -> dict:
        return {"kind": "stuck", "nodes": list(self.stuck)}


def _reducible(lat: Lattice, alive: np.ndarray) -> np.ndarray:
    """Nodes of ``alive`` that are the meet or join of two other alive nodes."""
    if len(alive) < 3:
        return np.zeros(0, dtype=np.int64)
    ix = np.ix_(alive, alive)
    a = alive[:, None]
    b = alive[None, :]
    out = []
    for table in (lat.meet, lat.join):
        t = table[ix]
        hit = (t != a) & (t != b)
        out.append(t[hit])
    return np.unique(np.concatenate(out))


def removable_elements(lat: Lattice, alive: Iterable[int] | None = None) -> list[int]:
    """Nodes whose removal leaves the (alive) rest closed under meet and join."""
    alive = np.arange(len(lat)) if alive is None else np.array(sorted(alive), dtype=np.int64)
    red = _reducible(lat, alive)
    return [int(z) for z in np.setdiff1d(alive, red)]


def dismantle(lat: Lattice) -> DismantlingWitness | NotDismantlable:
    """Greedily remove the lowest-indexed removable node until nothing is left."""
    alive = list(range(len(lat)))
    order: list[int] = []
    while alive:
        rem = removable_elements(lat, alive)
        if not rem:
            return NotDismantlable(stuck=tuple(alive), eliminated=tuple(order))
        z = rem[0]
        alive.remove(z)
        order.append(z)
    return DismantlingWitness(tuple(order))


def is_dismantlable(lat: Lattice) -> bool:
    return isinstance(dismantle(lat), DismantlingWitness)


def is_closed(lat: Lattice, nodes: Sequence[int]) -> bool:
    s = np.asarray(nodes, dtype=np.int64)
    if len(s) == 0:
        return True
    mask = np.zeros(len(lat), dtype=bool)
    mask[s] = True
    ix = np.ix_(s, s)
    return bool(mask[lat.meet[ix]].all() and mask[lat.join[ix]].all())


def verify_dismantling_witness(lat: Lattice, w: DismantlingWitness | Sequence[int]) -> bool:
    order = list(w.elimination if isinstance(w, DismantlingWitness) else w)
    if sorted(order) != list(range(len(lat))):
        raise ValueError("witness must list every node exactly once")
    return all(is_closed(lat, order[k:]) for k in range(len(order)))


def brute_force_dismantlable(lat: Lattice, cap: int = BRUTE_FORCE_CAP) -> bool:
    """Exhaustive search over every elimination order (memoized on survivor sets)."""
    n = len(lat)
    if n > cap:
        raise ValueError(f"oracle limited to {cap} nodes, lattice has {n}")
    meet = lat.meet.tolist()
    join = lat.join.tolist()

    def closed(mask: int) -> bool:
        members = [i for i in range(n) if mask >> i & 1]
        for i in members:
            for j in members:
                if not (mask >> meet[i][j] & 1 and mask >> join[i][j] & 1):
                    return False
        return True

    @lru_cache(maxsize=None)
    def ok(mask: int) -> bool:
        if mask & (mask - 1) == 0:
            return True
        for z in range(n):
            if mask >> z & 1:
                rest = mask & ~(1 << z)
                if closed(rest) and ok(rest):
                    return True
        return False

    return ok((1 << n) - 1)


def has_two_incomparable_removable(lat: Lattice) -> bool:
    rem = removable_elements(lat)
    leq = lat.leq
    return any(not leq[a, b] and not leq[b, a] for i, a in enumerate(rem) for b in rem[i + 1:])


# ---------------------------------------------------------------------------
# crowns


@dataclass(frozen=True)
class Crown:
    """x_i <= y_i, x_{i+1} <= y_i, x_1 <= y_n are the only comparabilities."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    @property
    def order(self) -> int:
        return 2 * len(self.xs)

    def nodes(self) -> tuple[int, ...]:
        return tuple(v for pair in zip(self.xs, self.ys) for v in pair)

    def to_dict(self, lat: Lattice | None = None) -> dict:
        out = {"kind": "crown", "order": self.order, "xs": list(self.xs), "ys": list(self.ys)}
        if lat is not None:
            out["x_labels"] = [node_label(lat, i) for i in self.xs]
            out["y_labels"] = [node_label(lat, i) for i in self.ys]
        return out


def crown_relations_ok(leq: Callable[[int, int], bool], xs: Sequence, ys: Sequence) -> bool:
    """Crown test against an arbitrary order predicate ``leq(a, b)``."""
    n = len(xs)
    if n < 3 or len(ys) != n:
        return False
    allnodes = list(xs) + list(ys)
    if len(set(allnodes)) != 2 * n:
        return False
    for i in range(n):
        for j in range(n):
            if i != j and (leq(xs[i], xs[j]) or leq(ys[i], ys[j])):
                return False
            want = j == i or j == (i - 1) % n   # x_i <= y_i and x_i <= y_{i-1}
            if leq(xs[i], ys[j]) != want:
                return False
            if leq(ys[j], xs[i]):
                return False
    return True


def validate_crown(lat: Lattice, c: Crown) -> bool:
    leq = lat.leq
    return crown_relations_ok(lambda a, b: bool(leq[a, b]), c.xs, c.ys)


def default_crown_bound(lat: Lattice) -> int:
    n = len(lat)
    return max(6, 2 * (n // 2)) if n <= EXHAUSTIVE_CROWN_NODES else 12


def find_crown(lat: Lattice, max_order: int | None = None) -> Crown | None:
    """Smallest crown of order <= max_order, or None.

    Order 6 is scanned first, then longer crowns.  With the default bound on
    lattices of at most 40 nodes the search is exhaustive.
    """
    if max_order is None:
        max_order = default_crown_bound(lat)
    if max_order < 6:
        raise ValueError("crowns have order >= 6")
    for half in range(3, max_order // 2 + 1):
        c = _crown_of_length(lat, half)
        if c is not None:
            return c
    return None


def _crown_of_length(lat: Lattice, half: int) -> Crown | None:
    n = len(lat)
    if 2 * half > n - 2:
        return None
    up = [lat.up_mask(v) & ~(1 << v) for v in range(n)]
    down = [lat.down_mask(v) & ~(1 << v) for v in range(n)]
    inc = [lat.incomparable_mask(v) for v in range(n)]
    inner = ((1 << n) - 1) & ~(1 << lat.bottom) & ~(1 << lat.top)

    for x1 in range(n):
        if not inner >> x1 & 1:
            continue
        allowed = inner & ~((1 << (x1 + 1)) - 1)
        path = _search_from(x1, up, down, inc, allowed, half)
        if path is not None:
            return Crown(xs=tuple(path[0::2]), ys=tuple(path[1::2]))
    return None


def _search_from(x1: int, up, down, inc, allowed: int, half: int) -> list[int] | None:
    last_pos = 2 * half - 1
    path = [x1]

    # acc: nodes incomparable to every path node except x1 and the current last
    def rec(acc: int) -> bool:
        t = len(path)
        last = path[-1]
        if t == last_pos:
            cand = up[last] & up[x1] & acc & allowed
            if cand:
                path.append((cand & -cand).bit_length() - 1)
                return True
            return False
        cand = (up[last] if t % 2 else down[last]) & acc & allowed
        if t >= 2:
            cand &= inc[x1]
        nxt = acc & inc[last] if t >= 2 else acc
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            if rec(nxt):
                return True
            path.pop()
        return False

    return path if rec(-1) else None


# ---------------------------------------------------------------------------
# lattice laws and the boolean cube


@dataclass(frozen=True)
class LatticeLaws:
    modular: bool
    distributive: bool
    modular_witness: tuple[int, int, int] | None = None
    distributive_witness: tuple[int, int, int] | None = None


def lattice_laws(lat: Lattice) -> LatticeLaws:
    """Exhaustive check of the modular and distributive laws over all triples."""
    n = len(lat)
    meet, join, leq = lat.meet, lat.join, lat.leq
    ar = np.arange(n)
    mod_w = dis_w = None
    for a in range(n):
        ja = join[a]                       # ja[x] = a v x
        ma = meet[a]
        if mod_w is None:
            # a <= c  =>  a v (b ^ c) == (a v b) ^ c ; axes (b, c)
            left = ja[meet]
            right = meet[ja[:, None], ar[None, :]]
            bad = (left != right) & leq[a][None, :]
            if bad.any():
                b, c = np.argwhere(bad)[0]
                mod_w = (a, int(b), int(c))
        if dis_w is None:
            # a ^ (b v c) == (a ^ b) v (a ^ c)
            left = ma[join]
            right = join[ma[:, None], ma[None, :]]
            bad = left != right
            if bad.any():
                b, c = np.argwhere(bad)[0]
                dis_w = (a, int(b), int(c))
        if mod_w is not None and dis_w is not None:
            break
    return LatticeLaws(mod_w is None, dis_w is None, mod_w, dis_w)


def find_boolean_cube(lat: Lattice) -> tuple[int, int, int] | None:
    """Three nodes that are the coatoms of a sublattice isomorphic to 2^3."""
    n = len(lat)
    meet, join, leq = lat.meet, lat.join, lat.leq
    comparable = leq | leq.T
    for a in range(n):
        for b in range(a + 1, n):
            if comparable[a, b]:
                continue
            t = join[a, b]
            cand = np.flatnonzero(~comparable[a] & ~comparable[b] & (join[a] == t) & (join[b] == t))
            for c in cand[cand > b]:
                c = int(c)
                if _is_cube(meet, join, a, b, c):
                    return (a, b, c)
    return None


def _is_cube(meet, join, a: int, b: int, c: int) -> bool:
    gens = (a, b, c)
    top = int(join[join[a, b], c])
    elem = {}
    # subset T of {0,1,2} -> meet of gens in T (empty meet = top)
    for mask in range(8):
        v = top
        for i in range(3):
            if mask >> i & 1:
                v = int(meet[v, gens[i]])
        elem[mask] = v
    if len(set(elem.values())) != 8:
        return False
    for s in range(8):
        for u in range(8):
            if meet[elem[s], elem[u]] != elem[s | u] or join[elem[s], elem[u]] != elem[s & u]:
                return False
    return True


def node_label(lat: Lattice, i: int) -> str:
    node = lat.nodes[i] if lat.nodes else i
    label = getattr(node, "label", None)
    if callable(label) and lat.group is not None:
        return label(lat.group)
    return str(node)
