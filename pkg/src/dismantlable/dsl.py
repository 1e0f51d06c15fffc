"""Parser for the group spec language.

Grammar (whitespace between tokens is ignored)::

    spec    := factor ("x" factor)*
    factor  := "S:" n | "A:" n | "Z:" n | "D:" order | "Q:" order | "QD:" order
             | "Ab:" n ("," n)* | "M:" p "," n | "SDP:" p "," q "," m "," r
             | "Ham:" n [";" [k ("," k)*]]
             | "Perm:" degree ";" perm ("," perm)*
    perm    := ("(" point+ ")")+          points separated by spaces or commas

Inside a cycle, a multi-digit run is read digit by digit when the degree is
below 10, so ``(125)`` means ``(1 2 5)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .groups import (Abelian, Alternating, Cyclic, Dihedral, GroupSpec, Hamiltonian, ModularM, Permutations,
                     Product, QuasiDihedral, Quaternion, SemidirectPQ, Symmetric)

FAMILIES = ("Perm", "Ham", "SDP", "QD", "Ab", "S", "A", "Z", "D", "Q", "M")

_TOKEN = re.compile(r"\s*(?:(?P<name>" + "|".join(FAMILIES) + r"|x)|(?P<int>\d+)|(?P<punct>[:,;()]))")


class SpecSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        super().__init__(f"syntax error at position {pos}: expected {expected}\n  {text}\n  {' ' * pos}^")
        self.pos = pos
        self.expected = expected


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise SpecSyntaxError(text, i, "a family name, integer or one of : , ; ( )")
        kind = m.lastgroup
        out.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: str):
        raise SpecSyntaxError(self.text, self.cur.pos, expected)

    def take(self, kind: str, value: str | None = None, expected: str | None = None) -> _Tok:
        t = self.cur
        if t.kind != kind or (value is not None and t.value != value):
            self.fail(expected or repr(value or kind))
        self.i += 1
        return t

    def accept(self, kind: str, value: str | None = None) -> bool:
        t = self.cur
        if t.kind == kind and (value is None or t.value == value):
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        return int(self.take("int", expected="an integer").value)

    def int_list(self) -> list[int]:
        out = [self.integer()]
        while self.accept("punct", ","):
            out.append(self.integer())
        return out

    def spec(self) -> GroupSpec:
        left = self.factor()
        while self.accept("name", "x"):
            left = Product(left, self.factor())
        if self.cur.kind != "end":
            self.fail("'x' or end of input")
        return left

    def factor(self) -> GroupSpec:
        t = self.cur
        if t.kind != "name" or t.value == "x":
            self.fail("a family name (" + ", ".join(FAMILIES) + ")")
        self.i += 1
        fam = t.value
        self.take("punct", ":")
        if fam == "Perm":
            return self.perm()
        if fam == "Ham":
            n = self.integer()
            odd: list[int] = []
            if self.accept("punct", ";") and self.cur.kind == "int":
                odd = self.int_list()
            return Hamiltonian(n, tuple(odd))
        args = self.int_list()
        arity = {"S": 1, "A": 1, "Z": 1, "D": 1, "Q": 1, "QD": 1, "M": 2, "SDP": 4}
        if fam == "Ab":
            return Abelian(tuple(args))
        if len(args) != arity[fam]:
            raise SpecSyntaxError(self.text, t.pos, f"{arity[fam]} integer argument(s) for {fam}")
        cls = {"S": Symmetric, "A": Alternating, "Z": Cyclic, "D": Dihedral, "Q": Quaternion,
               "QD": QuasiDihedral, "M": ModularM, "SDP": SemidirectPQ}[fam]
        return cls(*args)

    def perm(self) -> GroupSpec:
        degree = self.integer()
        gens = []
        if self.accept("punct", ";"):
            gens.append(self.one_perm(degree))
            while self.accept("punct", ","):
                gens.append(self.one_perm(degree))
        return Permutations(degree, tuple(gens))

    def one_perm(self, degree: int) -> tuple[tuple[int, ...], ...]:
        cycles = []
        self.take("punct", "(", expected="'(' starting a cycle")
        self.i -= 1
        while self.accept("punct", "("):
            pts: list[int] = []
            while True:
                t = self.cur
                if t.kind == "int":
                    self.i += 1
                    if len(t.value) > 1 and degree < 10:
                        pts.extend(int(c) for c in t.value)
                    else:
                        pts.append(int(t.value))
                elif t.kind == "punct" and t.value == ",":
                    self.i += 1
                elif t.kind == "punct" and t.value == ")":
                    self.i += 1
                    break
                else:
                    self.fail("a point or ')'")
            if len(pts) > 1:
                cycles.append(tuple(pts))
        return tuple(cycles)


def parse_spec(text: str, check: bool = True) -> GroupSpec:
    """Parse a spec string; with ``check`` the family constraints are enforced too."""
    spec = _Parser(text).spec()
    if check:
        spec.check()
    return spec
