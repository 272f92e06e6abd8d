"""Hilbert and ring class polynomials from complex multiplication.

H_D(X) is the product of (X - j(tau_f)) over the primitive reduced forms f of
discriminant D, tau_f = (-b + sqrt(D)) / 2a.  The j-values are computed in
high-precision binary floating point; integrality of every coefficient is
what certifies the result, so precision is escalated until rounding is
unambiguous.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from pathlib import Path

import mpmath
from mpmath import mp, mpc, mpf

from .intpoly import IntPolynomial, resultant
from .quadforms import QuadForm, check_discriminant, class_number, reduced_forms

__all__ = [
    "ClassPolynomial",
    "ClassPolynomialError",
    "ClassPolynomialCache",
    "j_invariant",
    "precision_estimate",
    "class_polynomial",
    "class_polynomial_derivative",
    "r_d",
    "ROUNDING_TOLERANCE",
    "MAX_PRECISION",
]

ROUNDING_TOLERANCE = 1e-3
MAX_PRECISION = 1 << 18


class ClassPolynomialError(RuntimeError):
    """Raised when precision escalation exceeds :data:`MAX_PRECISION`."""


@dataclass(frozen=True)
class ClassPolynomial:
    discriminant: int
    poly: IntPolynomial
    precision_used: int

    @property
    def degree(self) -> int:
        return self.poly.degree


def _euler_product(q, prec: int):
    """prod_{n>=1} (1 - q^n) via the pentagonal number series."""
    # exponents k(3k-1)/2 and k(3k+1)/2; stop when |q|^e is below 2^-prec
    logq = -mpmath.log(abs(q)) if q != 0 else mpf("inf")
    total = mpc(1)
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 * logq > (prec + 10) * math.log(2):
            break
        e2 = e1 + k
        term = q**e1 + q**e2
        total += -term if k % 2 else term
        k += 1
    return total


def j_invariant(tau, precision: int = 64):
    """j(tau) at ``precision`` bits for tau in the upper half plane.

    Uses j = (256 f + 1)^3 / f with f = (eta(2 tau) / eta(tau))^24, the eta
    products being evaluated from the pentagonal series.
    """
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    with mp.workprec(precision + 32):
        tau = mpc(tau)
        if tau.imag <= 0:
            raise ValueError("tau must have positive imaginary part")
        guard = precision + 32
        q = mpmath.exp(2j * mp.pi * tau)
        ratio = _euler_product(q * q, guard) / _euler_product(q, guard)
        f = q * ratio**24
        j = (256 * f + 1) ** 3 / f
    with mp.workprec(precision):
        return +j


def precision_estimate(d: int, forms: list[QuadForm] | None = None) -> int:
    """Working precision in bits for H_d: pi sqrt|d| / ln 2 * sum(1/a) + 32 (h+1)."""
    forms = forms if forms is not None else reduced_forms(d)
    s = sum(1 / f.a for f in forms)
    return math.ceil(math.pi * math.sqrt(-d) / math.log(2) * s) + 32 * (len(forms) + 1)


def _tau(form: QuadForm):
    return mpc(-form.b, mpmath.sqrt(-form.discriminant)) / (2 * form.a)


def _real_coefficients(d: int, forms: list[QuadForm], prec: int) -> list:
    """Coefficients (little-endian, as mpf) of prod (X - j(tau_f))."""
    with mp.workprec(prec):
        present = {(f.a, f.b, f.c) for f in forms}
        factors = []
        for f in forms:
            if f.b < 0 and (f.a, -f.b, f.c) in present:
                continue  # conjugate of the form with b > 0
            j = j_invariant(_tau(f), prec)
            if f.b == 0 or f.a == f.b or f.a == f.c or (f.a, -f.b, f.c) not in present:
                factors.append([-j.real, mpf(1)])
            else:
                factors.append([j.real**2 + j.imag**2, -2 * j.real, mpf(1)])
        poly = [mpf(1)]
        for fac in factors:
            out = [mpf(0)] * (len(poly) + len(fac) - 1)
            for i, a in enumerate(poly):
                for k, b in enumerate(fac):
                    out[i + k] += a * b
            poly = out
        return poly


def _round_all(coeffs, prec: int) -> tuple[list[int], float]:
    ints, worst = [], 0.0
    with mp.workprec(prec):
        for c in coeffs:
            n = int(mpmath.nint(c))
            worst = max(worst, float(abs(c - n)))
            ints.append(n)
    return ints, worst


def class_polynomial(d: int, precision: int | None = None,
                     cache: "ClassPolynomialCache | None" = None) -> ClassPolynomial:
    """Monic integer H_d, doubling the precision until coefficients round cleanly.

    >>> class_polynomial(-15).poly.coeffs
    (-121287375, 191025, 1)
    """
    d = check_discriminant(d)
    if cache is not None:
        hit = cache.get(d)
        if hit is not None:
            return ClassPolynomial(d, hit, 0)
    if precision is None:
        result = _class_polynomial_cached(d)
    else:
        result = _compute(d, precision)
    if cache is not None:
        cache.put(d, result.poly)
    return result


@lru_cache(maxsize=2048)
def _class_polynomial_cached(d: int) -> ClassPolynomial:
    return _compute(d, None)


def _compute(d: int, precision: int | None) -> ClassPolynomial:
    forms = reduced_forms(d)
    prec = precision or precision_estimate(d, forms)
    while prec <= MAX_PRECISION:
        coeffs, worst = _round_all(_real_coefficients(d, forms, prec), prec)
        if worst < ROUNDING_TOLERANCE:
            return ClassPolynomial(d, IntPolynomial(coeffs), prec)
        prec *= 2
    raise ClassPolynomialError(
        f"class polynomial of {d} did not round within {MAX_PRECISION} bits"
    )


def class_polynomial_derivative(d: int) -> IntPolynomial:
    return class_polynomial(d).poly.derivative()


def r_d(d: int, c_range: tuple[int, int] = (2, 7)) -> int:
    """gcd over c in c_range of Res(H_d', H_{c^2 d}').

    Returns 1 at once when h(d) = 1, since H_d' is then the constant 1.
    """
    d = check_discriminant(d)
    if class_number(d) == 1:
        return 1
    lo, hi = c_range
    if not 1 <= lo <= hi:
        raise ValueError("conductor range must satisfy 1 <= lo <= hi")
    g = 0
    dp = class_polynomial_derivative(d)
    for c in range(lo, hi + 1):
        g = gcd(g, resultant(dp, class_polynomial_derivative(c * c * d)))
        if g == 1:
            break
    return g


class ClassPolynomialCache:
    """Text cache, one record per line: ``D: coeff_0 coeff_1 ... coeff_h``."""

    def __init__(self, directory: str | os.PathLike):
        self.path = Path(directory) / "classpoly.txt"
        self._table: dict[int, IntPolynomial] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                key, _, body = line.partition(":")
                self._table[int(key)] = IntPolynomial(int(x) for x in body.split())

    def get(self, d: int) -> IntPolynomial | None:
        return self._table.get(d)

    def put(self, d: int, poly: IntPolynomial) -> None:
        if d in self._table:
            return
        self._table[d] = poly
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(format_record(d, poly) + "\n")

    def __contains__(self, d: int) -> bool:
        return d in self._table

    def __len__(self) -> int:
        return len(self._table)


def format_record(d: int, poly: IntPolynomial) -> str:
    return f"{d}: " + " ".join(str(a) for a in poly.coeffs)
