"""Rank-3 root lattice for the diagram 2 --s-- 1 --t-- 3.

Node 1 is the centre; vectors are written ``(a, b, c)`` for
``a*alpha1 + b*alpha2 + c*alpha3``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .exact_arith import SurdWindow


@dataclass(frozen=True)
class Shape:
    """Edge multiplicities: ``s`` between nodes 1-2, ``t`` between nodes 1-3."""

    s: int
    t: int

    def __post_init__(self):
        if not (isinstance(self.s, int) and isinstance(self.t, int)):
            raise TypeError("s and t must be integers")
        if self.s < 1 or self.t < 1:
            raise ValueError(f"s and t must be positive, got s={self.s}, t={self.t}")
        if self.K < 0:
            raise ValueError(
                f"s^2+t^2 = {self.S} < 4: threshold sqrt(S^2-4S) is not real"
            )

    @property
    def S(self) -> int:
        return self.s * self.s + self.t * self.t

    @property
    def K(self) -> int:
        return self.S * self.S - 4 * self.S

    @property
    def window(self) -> SurdWindow:
        return SurdWindow(self.S, self.K)

    def cartan(self) -> tuple[tuple[int, int, int], ...]:
        s, t = self.s, self.t
        return ((2, -s, -t), (-s, 2, 0), (-t, 0, 2))


class LatticeVector(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def height(self) -> int:
        return self.a + self.b + self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


SIMPLE_ROOTS = (LatticeVector(1, 0, 0), LatticeVector(0, 1, 0), LatticeVector(0, 0, 1))


class RootTag(enum.Enum):
    REAL = "RealRoot"
    IMAGINARY = "ImaginaryRoot"
    NOT_ROOT = "NotRoot"


@dataclass(frozen=True)
class RootClass:
    tag: RootTag
    representative: LatticeVector
    reflection_word: tuple[int, ...]


def vec(x: Iterable[int]) -> LatticeVector:
    a, b, c = x
    return LatticeVector(int(a), int(b), int(c))


def pairing(x: Sequence[int], y: Sequence[int], sh: Shape) -> int:
    xa, xb, xc = x
    ya, yb, yc = y
    return (
        2 * (xa * ya + xb * yb + xc * yc)
        - sh.s * (xa * yb + xb * ya)
        - sh.t * (xa * yc + xc * ya)
    )


def simple_pairings(x: Sequence[int], sh: Shape) -> tuple[int, int, int]:
    """``(<alpha_i, x>)`` for i = 1, 2, 3."""
    a, b, c = x
    return (2 * a - sh.s * b - sh.t * c, 2 * b - sh.s * a, 2 * c - sh.t * a)


def _check_node(i: int) -> None:
    if i not in (1, 2, 3):
        raise ValueError(f"node index must be 1, 2 or 3, got {i!r}")


def reflect(i: int, x: Sequence[int], sh: Shape) -> LatticeVector:
    """Simple reflection ``x - <alpha_i, x> alpha_i``."""
    _check_node(i)
    p = simple_pairings(x, sh)[i - 1]
    a, b, c = x
    if i == 1:
        return LatticeVector(a - p, b, c)
    if i == 2:
        return LatticeVector(a, b - p, c)
    return LatticeVector(a, b, c - p)


def orbit_walk(x: Sequence[int], word: Iterable[int], sh: Shape) -> LatticeVector:
    """Apply reflections in order, first element first."""
    y = vec(x)
    for i in word:
        y = reflect(i, y, sh)
    return y


def orbit_path(x: Sequence[int], word: Iterable[int], sh: Shape) -> list[LatticeVector]:
    """Every intermediate vector of :func:`orbit_walk`, starting with ``x``."""
    out = [vec(x)]
    for i in word:
        out.append(reflect(i, out[-1], sh))
    return out


def _support_connected(x: LatticeVector) -> bool:
    # only {2,3} without the centre node is disconnected
    return not (x.a == 0 and x.b > 0 and x.c > 0)


def classify(x: Sequence[int], sh: Shape) -> RootClass:
    """Walk to the anti-dominant chamber, reflecting at the smallest positive node."""
    x = vec(x)
    if min(x) < 0:
        raise ValueError(f"classify needs nonnegative coefficients, got {x}")
    if x == (0, 0, 0):
        raise ValueError("classify is undefined for the zero vector")
    word: list[int] = []
    while True:
        if x in SIMPLE_ROOTS:
            return RootClass(RootTag.REAL, x, tuple(word))
        p = simple_pairings(x, sh)
        i = next((k + 1 for k in range(3) if p[k] > 0), None)
        if i is None:
            tag = RootTag.IMAGINARY if _support_connected(x) else RootTag.NOT_ROOT
            return RootClass(tag, x, tuple(word))
        x = reflect(i, x, sh)
        word.append(i)
        if min(x) < 0:
            return RootClass(RootTag.NOT_ROOT, x, tuple(word))


def is_minimal(x: Sequence[int], sh: Shape) -> bool:
    """Anti-dominance test for an imaginary root: all simple pairings <= 0."""
    if classify(x, sh).tag is not RootTag.IMAGINARY:
        raise ValueError(f"{tuple(x)} is not an imaginary root for {sh}")
    return max(simple_pairings(x, sh)) <= 0


def gcd3(x: Sequence[int]) -> int:
    a, b, c = x
    return gcd(gcd(abs(a), abs(b)), abs(c))
