"""Finite groups as Cayley tables.

Every group is an immutable :class:`Group` whose elements are the integers
``0 .. order-1``; element 0 is the identity.  Groups come from family
descriptors (:class:`GroupSpec` subclasses) through :func:`build_group`.
Presented families are multiplied in the normal form ``x^i y^j``; permutation
families are closed breadth-first from their generators.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

DEFAULT_ORDER_CAP = 400


class GroupError(ValueError):
    pass


class ConstraintError(GroupError):
    """A family parameter violates the family's constraints."""


class OrderCapExceeded(GroupError):
    def __init__(self, cap: int, partial: int):
        super().__init__(f"group order exceeds cap {cap} (closure reached {partial} elements)")
        self.cap = cap
        self.partial = partial


# ---------------------------------------------------------------------------
# small number theory helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power_base(n: int) -> int | None:
    """Return p if n = p^k with k >= 1, else None."""
    f = factorize(n)
    if len(f) == 1:
        return next(iter(f))
    return None


def multiplicative_order(r: int, mod: int) -> int:
    if math.gcd(r, mod) != 1:
        return 0
    k, x = 1, r % mod
    while x != 1 % mod:
        x = x * r % mod
        k += 1
    return k


# ---------------------------------------------------------------------------
# the Group value


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its full multiplication table.

    ``table[g, h]`` is the index of ``g*h``.  ``elements`` holds the
    underlying objects (permutation tuples, normal-form exponents, ...) when
    the constructor has them, so callers can look elements up by value.
    """

    table: np.ndarray
    labels: tuple[str, ...]
    name: str = ""
    elements: tuple | None = None
    tag: tuple | None = None
    inverse: np.ndarray = field(init=False, repr=False)
    element_order: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=np.int32)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        n = table.shape[0]
        inv = np.argmin(table, axis=1).astype(np.int32)
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)
        orders = np.ones(n, dtype=np.int64)
        power = np.arange(n, dtype=np.int32)
        active = power != 0
        k = 1
        while active.any() and k <= n:
            power = table[power, np.arange(n)]
            k += 1
            hit = active & (power == 0)
            orders[hit] = k
            active &= ~hit
        orders.setflags(write=False)
        object.__setattr__(self, "element_order", orders)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.name or '?'}, order={self.order})"

    def mul(self, *gs: int) -> int:
        out = 0
        for g in gs:
            out = int(self.table[out, g])
        return out

    def power(self, g: int, k: int) -> int:
        k %= int(self.element_order[g])
        out = 0
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    def conjugate(self, h: int, g: int) -> int:
        """g h g^-1"""
        return int(self.table[self.table[g, h], self.inverse[g]])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def index_of(self, obj) -> int:
        if self.elements is None:
            raise KeyError("group has no element objects")
        lookup = getattr(self, "_lookup", None)
        if lookup is None:
            lookup = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_lookup", lookup)
        return lookup[obj]

    def find(self, label: str) -> int:
        """Index of the element with the given label.

        Permutation groups also accept any cycle notation, e.g. ``"(125)"``.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            pass
        if self.tag and self.tag[0] in ("perm", "S", "A"):
            degree = self.tag[1]
            return self.index_of(perm_from_cycles(parse_cycles(label, degree), degree))
        raise KeyError(label)


def group_from_table(table, labels: Sequence[str] | None = None, name: str = "",
                     elements: tuple | None = None, tag: tuple | None = None) -> Group:
    table = np.asarray(table)
    n = table.shape[0]
    if labels is None:
        labels = [str(i) for i in range(n)]
    return Group(table=table, labels=tuple(labels), name=name, elements=elements, tag=tag)


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    identity: bool = True
    latin: bool = True
    inverse: bool = True
    associative: bool = True
    witness: tuple | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity and self.latin and self.inverse and self.associative

    def __bool__(self) -> bool:
        return self.ok


def validate_group(g: Group) -> ValidationReport:
    t = np.asarray(g.table)
    n = t.shape[0]
    rep = ValidationReport()
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        rep.latin = False
        rep.messages.append("table entries out of range")
        return rep
    ar = np.arange(n)
    if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
        rep.identity = False
        rep.messages.append("element 0 is not a two-sided identity")
    rows_ok = (np.sort(t, axis=1) == ar).all()
    cols_ok = (np.sort(t, axis=0) == ar[:, None]).all()
    if not (rows_ok and cols_ok):
        rep.latin = False
        rep.messages.append("table is not a Latin square")
    if not (t[ar, g.inverse] == 0).all() or not (t[g.inverse, ar] == 0).all():
        rep.inverse = False
        rep.messages.append("inverse map is wrong")
    # (a*b)*c == a*(b*c), one a at a time
    for a in range(n):
        left = t[t[a]]          # left[b, c] = (a*b)*c
        right = t[a][t]         # right[b, c] = a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            rep.associative = False
            rep.witness = (a, b, c)
            rep.messages.append(f"associativity fails at ({a}, {b}, {c})")
            break
    return rep


# ---------------------------------------------------------------------------
# family descriptors


class GroupSpec:
    """Base class of the family descriptors accepted by :func:`build_group`."""

    def check(self) -> None:
        pass


@dataclass(frozen=True)
class Symmetric(GroupSpec):
    n: int

    def check(self):
        if self.n < 1:
            raise ConstraintError("S:n requires n >= 1")

    def __str__(self):
        return f"S:{self.n}"


@dataclass(frozen=True)
class Alternating(GroupSpec):
    n: int

    def check(self):
        if self.n < 1:
            raise ConstraintError("A:n requires n >= 1")

    def __str__(self):
        return f"A:{self.n}"


@dataclass(frozen=True)
class Cyclic(GroupSpec):
    n: int

    def check(self):
        if self.n < 1:
            raise ConstraintError("Z:n requires n >= 1")

    def __str__(self):
        return f"Z:{self.n}"


@dataclass(frozen=True)
class Abelian(GroupSpec):
    invariants: tuple[int, ...]

    def check(self):
        if not self.invariants or any(k < 1 for k in self.invariants):
            raise ConstraintError("Ab requires a non-empty list of positive integers")

    def __str__(self):
        return "Ab:" + ",".join(map(str, self.invariants))


@dataclass(frozen=True)
class Dihedral(GroupSpec):
    """Dihedral group of total order ``order`` (= 2n)."""

    order: int

    def check(self):
        if self.order < 2 or self.order % 2:
            raise ConstraintError("D:2n requires an even order >= 2")

    def __str__(self):
        return f"D:{self.order}"


@dataclass(frozen=True)
class Quaternion(GroupSpec):
    order: int

    def check(self):
        if self.order < 8 or self.order & (self.order - 1):
            raise ConstraintError("Q:2^n requires a power of 2 that is at least 8")

    def __str__(self):
        return f"Q:{self.order}"


@dataclass(frozen=True)
class ModularM(GroupSpec):
    p: int
    n: int

    def check(self):
        if not is_prime(self.p):
            raise ConstraintError("M:p,n requires p prime")
        if self.n < 3:
            raise ConstraintError("M:p,n requires n >= 3")
        if self.p == 2 and self.n < 4:
            raise ConstraintError("M:2,n requires n >= 4")

    def __str__(self):
        return f"M:{self.p},{self.n}"


@dataclass(frozen=True)
class QuasiDihedral(GroupSpec):
    order: int

    def check(self):
        if self.order < 16 or self.order & (self.order - 1):
            raise ConstraintError("QD:2^n requires a power of 2 that is at least 16")

    def __str__(self):
        return f"QD:{self.order}"


@dataclass(frozen=True)
class Hamiltonian(GroupSpec):
    """Q8 x Z2^n x A with A abelian of odd order given by its invariants."""

    n: int
    odd: tuple[int, ...] = ()

    def check(self):
        if self.n < 0:
            raise ConstraintError("Ham:n requires n >= 0")
        if any(k < 1 or k % 2 == 0 for k in self.odd):
            raise ConstraintError("Ham invariants of A must be odd positive integers")

    def __str__(self):
        return f"Ham:{self.n}" + (";" + ",".join(map(str, self.odd)) if self.odd else "")


@dataclass(frozen=True)
class SemidirectPQ(GroupSpec):
    """Z_p x| Z_{q^m}; the generator y of order q^m acts by y x y^-1 = x^r."""

    p: int
    q: int
    m: int
    r: int

    def check(self):
        if not (is_prime(self.p) and is_prime(self.q)):
            raise ConstraintError("SDP:p,q,m,r requires p and q prime")
        if self.m < 1:
            raise ConstraintError("SDP:p,q,m,r requires m >= 1")
        if multiplicative_order(self.r, self.p) != self.q:
            raise ConstraintError(
                f"SDP:p,q,m,r requires r to have multiplicative order exactly q={self.q} mod p={self.p}")

    def __str__(self):
        return f"SDP:{self.p},{self.q},{self.m},{self.r}"


@dataclass(frozen=True)
class Permutations(GroupSpec):
    degree: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]

    def check(self):
        if self.degree < 1:
            raise ConstraintError("Perm requires degree >= 1")
        for gen in self.generators:
            seen: set[int] = set()
            for cyc in gen:
                for pt in cyc:
                    if not 1 <= pt <= self.degree:
                        raise ConstraintError(f"point {pt} outside 1..{self.degree}")
                    if pt in seen:
                        raise ConstraintError(f"point {pt} repeated in generator {format_cycles(gen)}")
                    seen.add(pt)

    def __str__(self):
        return f"Perm:{self.degree};" + ",".join(format_cycles(gen) for gen in self.generators)


@dataclass(frozen=True)
class Product(GroupSpec):
    left: GroupSpec
    right: GroupSpec

    def check(self):
        self.left.check()
        self.right.check()

    def __str__(self):
        return f"{self.left} x {self.right}"


# ---------------------------------------------------------------------------
# permutations


def perm_from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> tuple[int, ...]:
    """Image tuple on 0-based points from 1-based cycles."""
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a - 1] = b - 1
    return tuple(img)


def cycles_of(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        out.append(tuple(c + 1 for c in cyc))
    return out


def format_cycles(cycles: Sequence[Sequence[int]]) -> str:
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> list[tuple[int, ...]]:
    """Parse ``"(1 2 5)(3 4)"``; digits may run together when degree < 10."""
    out = []
    for chunk in text.replace(")", ")\n").split("\n"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise GroupError(f"bad cycle {chunk!r}")
        body = chunk[1:-1].replace(",", " ").split()
        pts: list[int] = []
        for tok in body:
            if len(tok) > 1 and degree < 10:
                pts.extend(int(c) for c in tok)
            else:
                pts.append(int(tok))
        if pts:
            out.append(tuple(pts))
    return out


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[i] for i in p)


def permutation_group(degree: int, generators: Sequence[tuple[int, ...]], cap: int = DEFAULT_ORDER_CAP,
                      name: str = "", tag: tuple | None = None) -> Group:
    """Breadth-first closure of permutation generators (images on 0-based points)."""
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    gens = [tuple(g) for g in generators if tuple(g) != ident]
    while queue:
        e = queue.popleft()
        for s in gens:
            f = _compose(e, s)
            if f not in index:
                if len(elems) >= cap:
                    raise OrderCapExceeded(cap, len(elems) + 1)
                index[f] = len(elems)
                elems.append(f)
                queue.append(f)
    n = len(elems)
    arr = np.array(elems, dtype=np.int64)
    # key each permutation by its image tuple in base `degree`
    weights = degree ** np.arange(degree, dtype=np.int64)
    keys = arr @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        # elems[i] * elems[j]: apply elems[i], then elems[j]
        images = arr[:, arr[i]]
        table[i] = order[np.searchsorted(sorted_keys, images @ weights)]
    labels = [format_cycles(cycles_of(e)) for e in elems]
    return Group(table=table, labels=tuple(labels), name=name or f"Perm:{degree}",
                 elements=tuple(elems), tag=tag or ("perm", degree))


# ---------------------------------------------------------------------------
# presented families: normal form x^i y^j


def metacyclic_group(nx: int, ny: int, ypow: int, act: int, name: str, tag: tuple | None = None) -> Group:
    """Group on x^i y^j (i < nx, j < ny) with y^ny = x^ypow and y x y^-1 = x^act.

    ``act`` must be a unit mod nx fixing ypow, and act^ny = 1 mod nx.
    """
    if math.gcd(act, nx) != 1 or (act * ypow - ypow) % nx or pow(act, ny, nx) != 1 % nx:
        raise ConstraintError(f"inconsistent normal-form relations for {name}")
    n = nx * ny
    i = np.arange(n) // ny
    j = np.arange(n) % ny
    actpow = np.array([pow(act, k, nx) for k in range(ny)], dtype=np.int64)
    # (x^i y^j)(x^k y^l) = x^(i + k act^j) y^(j+l), folding y^ny into x^ypow
    ii = i[:, None] + i[None, :] * actpow[j][:, None]
    jj = j[:, None] + j[None, :]
    wrap = jj >= ny
    ii = (ii + np.where(wrap, ypow, 0)) % nx
    jj = jj % ny
    table = ii * ny + jj
    labels = []
    for a, b in zip(i, j):
        parts = []
        if a:
            parts.append("x" if a == 1 else f"x^{a}")
        if b:
            parts.append("y" if b == 1 else f"y^{b}")
        labels.append(" ".join(parts) or "1")
    elements = tuple((int(a), int(b)) for a, b in zip(i, j))
    return Group(table=table, labels=tuple(labels), name=name, elements=elements, tag=tag)


def direct_product(a: Group, b: Group, name: str = "") -> Group:
    na, nb = a.order, b.order
    ta = a.table.astype(np.int64)
    tb = b.table.astype(np.int64)
    table = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(na * nb, na * nb)
    labels = [f"({la}, {lb})" for la in a.labels for lb in b.labels]
    elements = None
    if a.elements is not None and b.elements is not None:
        elements = tuple((ea, eb) for ea in a.elements for eb in b.elements)
    return Group(table=table, labels=tuple(labels), name=name or f"{a.name} x {b.name}",
                 elements=elements, tag=("product", a.tag, b.tag))


def cyclic_group(n: int) -> Group:
    return metacyclic_group(n, 1, 0, 1, name=f"Z:{n}", tag=("Z", n))


def abelian_group(invariants: Sequence[int], name: str = "") -> Group:
    """Z_n1 x ... x Z_nk on exponent vectors, first factor most significant."""
    inv = tuple(int(k) for k in invariants)
    coords = np.array(list(np.ndindex(*inv)), dtype=np.int64).reshape(-1, len(inv))
    radix = np.array([math.prod(inv[i + 1:]) for i in range(len(inv))], dtype=np.int64)
    summed = (coords[:, None, :] + coords[None, :, :]) % np.array(inv)
    table = summed @ radix
    labels = ["(" + ",".join(map(str, c)) + ")" for c in coords.tolist()]
    return Group(table=table, labels=tuple(labels), name=name or "Ab:" + ",".join(map(str, inv)),
                 elements=tuple(tuple(c) for c in coords.tolist()), tag=("Ab", inv))


def _guard(order: int, cap: int) -> None:
    if order > cap:
        raise OrderCapExceeded(cap, order)


def build_group(spec: GroupSpec, cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Construct the Cayley table described by ``spec``."""
    spec.check()
    name = str(spec)
    if isinstance(spec, Cyclic):
        _guard(spec.n, cap)
        return metacyclic_group(spec.n, 1, 0, 1, name=name, tag=("Z", spec.n))
    if isinstance(spec, Abelian):
        _guard(math.prod(spec.invariants), cap)
        return abelian_group(spec.invariants, name=name)
    if isinstance(spec, Dihedral):
        _guard(spec.order, cap)
        n = spec.order // 2
        return metacyclic_group(n, 2, 0, -1 % n if n > 1 else 0, name=name, tag=("D", spec.order))
    if isinstance(spec, Quaternion):
        _guard(spec.order, cap)
        nx = spec.order // 2
        # y^2 = x^(nx/2) is implied in the group but not by the two listed relations alone
        return metacyclic_group(nx, 2, nx // 2, nx - 1, name=name, tag=("Q", spec.order))
    if isinstance(spec, QuasiDihedral):
        _guard(spec.order, cap)
        nx = spec.order // 2
        return metacyclic_group(nx, 2, 0, nx // 2 - 1, name=name, tag=("QD", spec.order))
    if isinstance(spec, ModularM):
        p, n = spec.p, spec.n
        _guard(p ** n, cap)
        nx = p ** (n - 1)
        # y^-1 x y = x^(p^(n-2)+1)  <=>  y x y^-1 = x^c with c its inverse
        c = pow(p ** (n - 2) + 1, -1, nx)
        return metacyclic_group(nx, p, 0, c, name=name, tag=("M", p, n))
    if isinstance(spec, SemidirectPQ):
        nq = spec.q ** spec.m
        _guard(spec.p * nq, cap)
        return metacyclic_group(spec.p, nq, 0, spec.r % spec.p, name=name, tag=("SDP", spec.p, spec.q, spec.m, spec.r))
    if isinstance(spec, Hamiltonian):
        _guard(8 * 2 ** spec.n * math.prod(spec.odd), cap)
        g = build_group(Quaternion(8), cap)
        rest = (2,) * spec.n + tuple(spec.odd)
        if rest:
            g = direct_product(g, abelian_group(rest))
        return _renamed(g, name, ("Ham", spec.n, spec.odd))
    if isinstance(spec, Symmetric):
        n = spec.n
        _guard(math.factorial(n), cap)
        gens = []
        if n >= 2:
            gens.append(perm_from_cycles([(1, 2)], n))
        if n >= 3:
            gens.append(perm_from_cycles([tuple(range(1, n + 1))], n))
        return permutation_group(n, gens, cap, name=name, tag=("S", n))
    if isinstance(spec, Alternating):
        n = spec.n
        _guard(max(1, math.factorial(n) // 2), cap)
        gens = [perm_from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
        return permutation_group(n, gens, cap, name=name, tag=("A", n))
    if isinstance(spec, Permutations):
        gens = [perm_from_cycles(c, spec.degree) for c in spec.generators]
        return permutation_group(spec.degree, gens, cap, name=name, tag=("perm", spec.degree))
    if isinstance(spec, Product):
        a = build_group(spec.left, cap)
        b = build_group(spec.right, cap)
        _guard(a.order * b.order, cap)
        return direct_product(a, b, name=name)
    raise GroupError(f"unknown group spec {spec!r}")


def _renamed(g: Group, name: str, tag: tuple) -> Group:
    return Group(table=g.table, labels=g.labels, name=name, elements=g.elements, tag=tag)


# ---------------------------------------------------------------------------
# subgroups of a table, as index arrays


def _closure(g: Group, seed: np.ndarray) -> np.ndarray:
    """Sorted index array of the subgroup generated by seed (which must contain 0)."""
    s = np.unique(seed)
    t = g.table
    while True:
        nxt = np.unique(t[np.ix_(s, s)])
        if len(nxt) == len(s):
            return s
        s = nxt


def quotient_group(g: Group, normal: Sequence[int] | np.ndarray) -> Group:
    """The group of cosets of a normal subgroup.

    ``normal`` is a collection of element indices.  Cosets are numbered by
    their smallest element, so the identity coset is 0.
    """
    members = np.unique(np.asarray(list(normal) if not isinstance(normal, np.ndarray) else normal, dtype=np.int64))
    if len(members) == 0 or members[0] != 0:
        raise GroupError("not a subgroup: identity missing")
    if len(_closure(g, members)) != len(members):
        raise GroupError("not a subgroup: not closed under multiplication")
    t = g.table
    # left cosets x N for every x
    cosets = np.sort(t[:, members], axis=1)
    for x in range(g.order):
        right = np.sort(t[members, x])
        if not np.array_equal(right, cosets[x]):
            raise GroupError("subgroup is not normal")
    reps, coset_of = np.unique(cosets[:, 0], return_inverse=True)
    table = coset_of[t[np.ix_(reps, reps)]]
    labels = [g.labels[r] for r in reps]
    return Group(table=table, labels=tuple(labels), name=f"{g.name}/N{len(members)}",
                 elements=None, tag=("quotient",))
