"""Exact comparisons against the thresholds 1/2 +- sqrt(K)/(2S).

Every decision here is made with integers.  The thresholds are irrational,
so each comparison is rearranged into ``L <= den*sqrt(K)`` and settled by a
sign check followed by squaring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rational = Fraction


def rat_cmp(x: Fraction, y: Fraction) -> int:
    """Three-way comparison (-1, 0, 1) by cross multiplication."""
    lhs = x.numerator * y.denominator
    rhs = y.numerator * x.denominator
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class SurdWindow:
    """The open interval between the roots of ``S x^2 - S x + 1``."""

    S: int
    K: int

    def __post_init__(self):
        if self.S <= 0:
            raise ValueError(f"S must be positive, got {self.S}")
        if self.K != self.S * self.S - 4 * self.S:
            raise ValueError(f"K must equal S^2 - 4S (S={self.S}, K={self.K})")
        if self.K < 0:
            raise ValueError(
                f"S={self.S} gives K={self.K} < 0: no real threshold (shape is not hyperbolic)"
            )

    @classmethod
    def from_S(cls, S: int) -> "SurdWindow":
        return cls(S, S * S - 4 * S)


def _le_sqrt(lhs: int, den: int, K: int) -> bool:
    # lhs <= den * sqrt(K), den > 0
    if lhs <= 0:
        return True
    return lhs * lhs <= den * den * K


def _lt_sqrt(lhs: int, den: int, K: int) -> bool:
    # lhs < den * sqrt(K), den > 0
    if lhs < 0:
        return True
    return lhs * lhs < den * den * K


def leq_upper_surd(num: int, den: int, w: SurdWindow) -> bool:
    """True iff ``num/den <= 1/2 + sqrt(K)/(2S)``."""
    if den <= 0:
        raise ValueError("den must be positive")
    return _le_sqrt(2 * w.S * num - w.S * den, den, w.K)


def lt_upper_surd(num: int, den: int, w: SurdWindow) -> bool:
    if den <= 0:
        raise ValueError("den must be positive")
    return _lt_sqrt(2 * w.S * num - w.S * den, den, w.K)


def gt_lower_surd(num: int, den: int, w: SurdWindow) -> bool:
    """True iff ``num/den > 1/2 - sqrt(K)/(2S)``."""
    if den <= 0:
        raise ValueError("den must be positive")
    return _lt_sqrt(w.S * den - 2 * w.S * num, den, w.K)


def in_imaginary_window(a: int, wdt: int, w: SurdWindow) -> bool:
    """True iff ``a/wdt`` lies strictly inside the open window.

    ``wdt`` is the weighted width ``s*b + t*c`` and must be positive.
    """
    if wdt <= 0:
        raise ValueError(f"weighted width must be positive, got {wdt}")
    return gt_lower_surd(a, wdt, w) and lt_upper_surd(a, wdt, w)


def in_window_quadratic(a: int, wdt: int, w: SurdWindow) -> bool:
    """Single-inequality form of :func:`in_imaginary_window`: ``S r^2 - S r + 1 < 0``."""
    return w.S * a * a - w.S * a * wdt + wdt * wdt < 0


def surd_upper_decimal(w: SurdWindow, digits: int) -> str:
    """``1/2 + sqrt(K)/(2S)`` rounded to ``digits`` places, for display only."""
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    scale = 10**digits
    root = isqrt(w.K * scale * scale)
    # floor(x + 1/2) with x = (S*scale + sqrt(K)*scale) / (2S); dropping the
    # fractional part of sqrt(K)*scale cannot change the floor.
    q = (w.S * scale + w.S + root) // (2 * w.S)
    whole, frac = divmod(q, scale)
    if digits == 0:
        return str(whole)
    return f"{whole}.{frac:0{digits}d}"
