"""Exact root multiplicities from the Peterson recurrence.

With ``(rho, alpha_i) = 1`` and ``c_beta = sum_{k | beta} m_{beta/k} / k``::

    ((beta, beta) - 2 ht(beta)) c_beta = sum_{beta' + beta'' = beta} (beta', beta'') c_beta' c_beta''

the sum running over ordered pairs of nonzero vectors in the positive cone.
Then ``m_beta = c_beta - sum_{k >= 2, k | beta} m_{beta/k} / k``.
"""
from __future__ import annotations

import csv
import os
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .root_lattice import LatticeVector, Shape, gcd3, pairing, vec

CACHE_HEADER = ["s", "t", "a", "b", "c", "mult"]


class PetersonError(ArithmeticError):
    """The recurrence produced something impossible (negative, fractional, 0/x)."""


def denominator(x: Sequence[int], sh: Shape) -> int:
    """``(x, x) - 2 ht(x)``, the coefficient of ``c_x`` in the recurrence."""
    return pairing(x, x, sh) - 2 * sum(x)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _by_height(vectors: Iterable[LatticeVector]) -> list[LatticeVector]:
    return sorted(vectors, key=lambda v: (v.height, v))


class MultTable:
    """Memoized multiplicities and ``c`` coefficients for one shape.

    Entries are filled on demand for the componentwise box below a query,
    in ascending height then lexicographic order.  The table is meant to
    be filled by a single writer and read freely afterwards.
    """

    def __init__(self, shape: Shape):
        self.shape = shape
        self.multiplicities: dict[LatticeVector, int] = {}
        self.c_coeffs: dict[LatticeVector, Fraction] = {}
        self.frontier = 0

    # -- queries ---------------------------------------------------------
    def multiplicity(self, x: Sequence[int]) -> int:
        x = vec(x)
        if min(x) < 0:
            return 0
        if x == (0, 0, 0):
            return 0
        self._ensure(x)
        return self.multiplicities[x]

    def c_coefficient(self, x: Sequence[int]) -> Fraction:
        x = vec(x)
        if min(x) < 0 or x == (0, 0, 0):
            raise ValueError(f"c coefficient needs a nonzero nonnegative vector, got {x}")
        self._ensure(x)
        return self.c_coeffs[x]

    def fill(self, max_height: int) -> None:
        """Compute every nonnegative vector of height <= ``max_height``."""
        todo = [
            LatticeVector(a, b, h - a - b)
            for h in range(1, max_height + 1)
            for a in range(h + 1)
            for b in range(h - a + 1)
        ]
        self._compute(todo)
        self.frontier = max(self.frontier, max_height)

    # -- recurrence ------------------------------------------------------
    def _ensure(self, x: LatticeVector) -> None:
        if x in self.multiplicities:
            return
        box = (
            LatticeVector(a, b, c)
            for a, b, c in product(range(x.a + 1), range(x.b + 1), range(x.c + 1))
        )
        self._compute(v for v in box if v != (0, 0, 0))

    def _compute(self, vectors: Iterable[LatticeVector]) -> None:
        for v in _by_height(vectors):
            if v in self.multiplicities:
                if v not in self.c_coeffs:
                    self.c_coeffs[v] = self._c_from_mults(v)
                continue
            c = self._c_by_recurrence(v)
            self.c_coeffs[v] = c
            self.multiplicities[v] = self._mult_from_c(v, c)

    def _c_by_recurrence(self, v: LatticeVector) -> Fraction:
        if v.height == 1:
            return Fraction(1)
        rhs = self.recurrence_rhs(v)
        d = denominator(v, self.shape)
        if d == 0:
            if rhs != 0:
                raise PetersonError(f"zero denominator with nonzero right side at {v}")
            # (v, v) = 2 ht(v) >= 4 rules out v being a root, so m_v = 0 and
            # c_v is carried entirely by the proper divisors of v
            total = Fraction(0)
            for k in _divisors(gcd3(v))[1:]:
                total += Fraction(self.multiplicities[LatticeVector(v.a // k, v.b // k, v.c // k)], k)
            return total
        return rhs / d

    def recurrence_rhs(self, v: LatticeVector) -> Fraction:
        """Right side of the recurrence at ``v``; every proper sub-vector must be known."""
        s, t = self.shape.s, self.shape.t
        c_of = self.c_coeffs
        # ordered sum = 2 * (sum over first < second) + diagonal term
        twice = Fraction(0)
        diag = Fraction(0)
        va, vb, vc = v
        for a1 in range(va + 1):
            a2 = va - a1
            for b1 in range(vb + 1):
                b2 = vb - b1
                for c1 in range(vc + 1):
                    c2 = vc - c1
                    first = (a1, b1, c1)
                    second = (a2, b2, c2)
                    if first >= second or first == (0, 0, 0):
                        if first == second:
                            cf = c_of[first]
                            if cf:
                                p = 2 * (a1 * a2 + b1 * b2 + c1 * c2) - s * (a1 * b2 + b1 * a2) - t * (a1 * c2 + c1 * a2)
                                diag += p * cf * cf
                        continue
                    cf = c_of[first]
                    if not cf:
                        continue
                    cs = c_of[second]
                    if not cs:
                        continue
                    p = 2 * (a1 * a2 + b1 * b2 + c1 * c2) - s * (a1 * b2 + b1 * a2) - t * (a1 * c2 + c1 * a2)
                    if p:
                        twice += p * cf * cs
        return 2 * twice + diag

    def _mult_from_c(self, v: LatticeVector, c: Fraction) -> int:
        g = gcd3(v)
        m = c
        for k in _divisors(g)[1:]:
            m -= Fraction(self.multiplicities[LatticeVector(v.a // k, v.b // k, v.c // k)], k)
        if m.denominator != 1 or m < 0:
            raise PetersonError(f"multiplicity of {v} came out as {m}")
        return int(m)

    def _c_from_mults(self, v: LatticeVector) -> Fraction:
        total = Fraction(0)
        for k in _divisors(gcd3(v)):
            total += Fraction(self.multiplicity(LatticeVector(v.a // k, v.b // k, v.c // k)), k)
        return total

    # -- persistence -----------------------------------------------------
    def save_csv(self, path: str | os.PathLike) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CACHE_HEADER)
            for v in _by_height(self.multiplicities):
                w.writerow([self.shape.s, self.shape.t, *v, self.multiplicities[v]])

    def load_csv(self, path: str | os.PathLike) -> int:
        """Merge cached rows for this shape; returns how many were read."""
        rows = []
        with open(path, newline="", encoding="utf-8") as fh:
            for rec in csv.DictReader(fh):
                if (int(rec["s"]), int(rec["t"])) != (self.shape.s, self.shape.t):
                    continue
                rows.append((LatticeVector(int(rec["a"]), int(rec["b"]), int(rec["c"])), int(rec["mult"])))
        for v, m in rows:
            if m < 0:
                raise PetersonError(f"cache holds negative multiplicity for {v}")
            self.multiplicities[v] = m
        for v in _by_height(v for v, _ in rows):
            self.c_coeffs[v] = self._c_from_mults(v)
        return len(rows)


_TABLES: dict[Shape, MultTable] = {}


def table_for(shape: Shape) -> MultTable:
    """Process-wide table for ``shape``."""
    if shape not in _TABLES:
        _TABLES[shape] = MultTable(shape)
    return _TABLES[shape]


def multiplicity(x: Sequence[int], sh: Shape, table: MultTable | None = None) -> int:
    return (table or table_for(sh)).multiplicity(x)


def c_coefficient(x: Sequence[int], sh: Shape, table: MultTable | None = None) -> Fraction:
    return (table or table_for(sh)).c_coefficient(x)
