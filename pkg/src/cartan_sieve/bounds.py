"""Explicit height and isogeny bounds, and the primes where they cross.

All logarithms are natural.  The crossover thresholds are found in two
steps: first a derivative certificate shows that the residual
``p - 7000 * (...)`` is increasing from some point on, then integer
bisection locates the first p past which the inequality can no longer hold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath
from mpmath import mp, mpf

__all__ = [
    "BoundEvaluation",
    "BracketError",
    "Crossover",
    "runge_height_bound",
    "faltings_height_bound",
    "splic_height_bound",
    "faltings_transfer",
    "faltings_from_j",
    "gr_isogeny_bound",
    "r2_residual",
    "r3_residual",
    "r2_rhs",
    "crossover_r2",
    "crossover_r3",
    "r2_auxiliary_check",
    "evaluate_bounds",
    "ISOGENY_CONSTANT",
    "BISECTION_BITS",
]

ISOGENY_CONSTANT = 7000  # 7 * 10^3, the isogeny degree constant in both residuals
BISECTION_BITS = 128


class BracketError(ArithmeticError):
    """The monotonicity certificate or the sign change could not be established."""


def _check_p(p: float, check_domain: bool) -> None:
    if check_domain and p < 3:
        raise ValueError(f"bound defined for p >= 3, got {p}")


def runge_height_bound(p: float, *, check_domain: bool = True) -> float:
    """2 pi sqrt(p) + 6 log p + 21 (log p)^2 / sqrt(p)."""
    _check_p(p, check_domain)
    lp, sp = math.log(p), math.sqrt(p)
    return 2 * math.pi * sp + 6 * lp + 21 * lp * lp / sp


def faltings_height_bound(p: float, *, check_domain: bool = True) -> float:
    """2 p log p + 4 p."""
    _check_p(p, check_domain)
    return 2 * p * math.log(p) + 4 * p


def splic_height_bound(p: float, *, check_domain: bool = True) -> float:
    """24 p log(3p)."""
    _check_p(p, check_domain)
    return 24 * p * math.log(3 * p)


def faltings_transfer(h_f: float, delta: int) -> float:
    """Faltings height after an isogeny of degree delta: h_F + log(delta) / 2."""
    if delta < 1:
        raise ValueError("isogeny degree must be >= 1")
    return h_f + 0.5 * math.log(delta)


def faltings_from_j(h_j: float) -> float:
    """Faltings height from the height of j: h(j) / 12 + 3."""
    if h_j < 0:
        raise ValueError("height of j must be non-negative")
    return h_j / 12 + 3


def gr_isogeny_bound(d: int, h_f: float) -> float:
    """Minimal isogeny degree bound 10^7 d^2 (max(h_F, 985) + 4 log d)^2."""
    if d < 1:
        raise ValueError("field degree must be >= 1")
    return 1e7 * d * d * (max(h_f, 985.0) + 4 * math.log(d)) ** 2


# ------------------------------------------------------------ crossovers


def r2_rhs(p) -> mpf:
    """7000 (2 pi / 12 sqrt(p) + log p + 3 + 21/12 (log p)^2 / sqrt(p))."""
    p = mpf(p)
    lp, sp = mpmath.log(p), mpmath.sqrt(p)
    return ISOGENY_CONSTANT * (2 * mp.pi / 12 * sp + lp + 3 + mpf(21) / 12 * lp**2 / sp)


def r2_residual(p) -> mpf:
    """p - rhs; the r = 2 inequality holds at p iff this is <= 0."""
    return mpf(p) - r2_rhs(p)


def r3_residual(p) -> mpf:
    """sqrt(p) - 7000 (2 log p + 4); the r = 3 inequality holds iff <= 0."""
    p = mpf(p)
    return mpmath.sqrt(p) - ISOGENY_CONSTANT * (2 * mpmath.log(p) + 4)


def _r2_increasing_from(p) -> bool:
    # f'(p) = 1 - 7000 (pi / (12 sqrt p) + 1/p + 21/12 * log p (2 - log(p)/2) / p^1.5);
    # the last term is <= 0 once log p >= 4 and the others decrease in p
    p = mpf(p)
    return mpmath.log(p) >= 4 and ISOGENY_CONSTANT * (mp.pi / (12 * mpmath.sqrt(p)) + 1 / p) < 1


def _r3_increasing_from(p) -> bool:
    # f'(p) = 1 / (2 sqrt p) - 14000 / p, positive iff sqrt(p) > 28000
    p = mpf(p)
    return 2 * ISOGENY_CONSTANT * 2 < mpmath.sqrt(p)


@dataclass(frozen=True)
class Crossover:
    threshold: int
    monotone_from: int
    residual_below: float
    residual_at: float


def _crossover(residual: Callable, increasing_from: Callable[[int], bool]) -> Crossover:
    with mp.workprec(BISECTION_BITS):
        lo = 16
        while not increasing_from(lo):
            lo *= 2
            if lo > 1 << 80:
                raise BracketError("no monotonicity certificate found")
        if residual(lo) > 0:
            raise BracketError(f"inequality already fails at the certificate point {lo}")
        start = lo
        hi = lo
        while residual(hi) <= 0:
            lo, hi = hi, hi * 2
            if hi > 1 << 80:
                raise BracketError("inequality never fails")
        # residual(lo) <= 0 < residual(hi), residual increasing on [start, inf)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if residual(mid) > 0:
                hi = mid
            else:
                lo = mid
        return Crossover(hi, start, float(residual(hi - 1)), float(residual(hi)))


def crossover_r2(detail: bool = False):
    """Least integer P with the r = 2 inequality failing for every real p >= P."""
    c = _crossover(r2_residual, _r2_increasing_from)
    return c if detail else c.threshold


def crossover_r3(detail: bool = False):
    """Least integer P with the r = 3 inequality failing for every real p >= P."""
    c = _crossover(r3_residual, _r3_increasing_from)
    return c if detail else c.threshold


def r2_auxiliary_check(p: float = 1e7, factor: float = 3.71e3) -> tuple[float, float, bool]:
    """At p, compare the r = 2 right-hand side with factor * sqrt(p)."""
    with mp.workprec(BISECTION_BITS):
        rhs = r2_rhs(p)
        bound = factor * mpmath.sqrt(mpf(p))
        return float(rhs), float(bound), bool(rhs <= bound)


# ------------------------------------------------------------ tables


@dataclass(frozen=True)
class BoundEvaluation:
    p: float
    name: str
    value: float
    formula: str


_FORMULAS = (
    ("runge", "2*pi*sqrt(p) + 6*log(p) + 21*log(p)^2/sqrt(p)", runge_height_bound),
    ("faltings", "2*p*log(p) + 4*p", faltings_height_bound),
    ("splic", "24*p*log(3*p)", splic_height_bound),
)


def evaluate_bounds(p: float) -> list[BoundEvaluation]:
    """Every per-prime bound at p, plus the derived Faltings and isogeny values."""
    rows = [BoundEvaluation(p, name, fn(p), formula) for name, formula, fn in _FORMULAS]
    h_f = faltings_transfer(faltings_from_j(rows[0].value), int(p))
    rows.append(BoundEvaluation(p, "faltings_via_runge", h_f, "h(j)/12 + 3 + log(p)/2"))
    rows.append(BoundEvaluation(p, "isogeny_degree", gr_isogeny_bound(2, h_f),
                                "1e7*d^2*(max(h_F,985) + 4*log(d))^2, d=2"))
    return rows
