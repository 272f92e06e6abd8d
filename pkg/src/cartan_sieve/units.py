"""Siegel functions, the modular units U_c, and numerical checks of their size.

Points tau are taken in D + Z (the SL2(Z) fundamental domain and its integer
translates), where |q| <= exp(-pi sqrt 3).  Siegel functions are evaluated
from their q-product with mpmath; the product is truncated once the
geometric tail bound on the remaining log-magnitude is negligible.
"""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import mpmath
import numpy as np
from mpmath import mp, mpc, mpf

__all__ = [
    "B2",
    "SiegelIndex",
    "DomainPoint",
    "Check",
    "siegel_g",
    "log_abs_siegel_g",
    "orbit",
    "act",
    "log_abs_Uc",
    "pga_residual",
    "check_pga",
    "check_pu",
    "pu_main_term",
    "pu_envelope",
    "check_lemma_llogz",
    "check_basic_inequality",
    "random_domain_point",
    "verify_units",
    "Q_DOMAIN_MAX",
    "TAIL_TOLERANCE",
    "DPS",
]

DPS = 50
TAIL_TOLERANCE = 1e-15
Q_DOMAIN_MAX = math.exp(-math.pi * math.sqrt(3))
EQUALITY_RTOL = 1e-12


def B2(t):
    """Second Bernoulli polynomial t^2 - t + 1/6 (exact for Fractions)."""
    if isinstance(t, (int, Fraction)):
        return t * t - t + Fraction(1, 6)
    return t * t - t + mpf(1) / 6 if isinstance(t, mpf) else t * t - t + 1 / 6


@dataclass(frozen=True, order=True)
class SiegelIndex:
    """A pair (a1, a2) in Q^2 \\ Z^2, stored with both entries in [0, 1)."""

    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        a1, a2 = Fraction(self.a1) % 1, Fraction(self.a2) % 1
        if a1 == 0 and a2 == 0:
            raise ValueError("Siegel index must not be integral")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    @classmethod
    def of(cls, a1, a2, p: int | None = None) -> "SiegelIndex":
        if p is not None:
            return cls(Fraction(a1, p), Fraction(a2, p))
        return cls(Fraction(a1), Fraction(a2))


@dataclass(frozen=True)
class DomainPoint:
    tau: complex

    def __post_init__(self):
        if complex(self.tau).imag <= 0:
            raise ValueError("tau must lie in the upper half plane")

    @property
    def q(self):
        return mpmath.exp(2j * mp.pi * mpc(self.tau))

    @property
    def abs_q(self) -> float:
        return math.exp(-2 * math.pi * complex(self.tau).imag)

    def in_domain(self) -> bool:
        """tau in D + Z, i.e. at distance >= 1 from the nearest integer."""
        t = complex(self.tau)
        return abs(t - round(t.real)) >= 1 - 1e-15 and t.imag >= math.sqrt(3) / 2 - 1e-15


def _as_tau(tau):
    return mpc(tau.tau) if isinstance(tau, DomainPoint) else mpc(tau)


def _factor_pairs(a: SiegelIndex, tau, terms: int | None):
    """Yield the pairs (w1, w2) of the product, n = 0, 1, ... with a tail bound."""
    t = _as_tau(tau)
    a1, a2 = mpf(a.a1.numerator) / a.a1.denominator, mpf(a.a2.numerator) / a.a2.denominator
    q = mpmath.exp(2j * mp.pi * t)
    aq = abs(q)
    e2 = mpmath.expjpi(2 * a2)
    w1 = mpmath.exp(2j * mp.pi * a1 * t) * e2           # q^a1 e(a2)
    w2 = mpmath.exp(2j * mp.pi * (1 - a1) * t) / e2     # q^(1-a1) e(-a2)
    n = 0
    while True:
        yield n, w1, w2, aq
        w1 *= q
        w2 *= q
        n += 1
        if terms is not None and n >= terms:
            return


def _tail_bound(aq, n: int):
    # factors k >= n have |w| <= |q|^k; |log|1-w|| <= -log(1-|w|) <= |w| / (1-|w|)
    if aq >= 1:
        return mpf("inf")
    head = aq**n
    return 2 * head / ((1 - aq) * (1 - head)) if head < 1 else mpf("inf")


def log_abs_siegel_g(a: SiegelIndex, tau, terms: int | None = None,
                     tol: float = TAIL_TOLERANCE):
    """log |g_a(tau)| from the q-product.

    With ``terms`` given, exactly that many factor pairs are used; otherwise
    the product stops once the tail bound is below ``tol`` times the
    accumulated magnitude (and below ``tol`` absolutely when that is small).
    """
    with mp.workdps(DPS):
        t = _as_tau(tau)
        a1 = mpf(a.a1.numerator) / a.a1.denominator
        acc = B2(a1) / 2 * (-2 * mp.pi * t.imag)
        for n, w1, w2, aq in _factor_pairs(a, t, terms):
            acc += mpmath.log(abs(1 - w1)) + mpmath.log(abs(1 - w2))
            if terms is None and n >= 1 and _tail_bound(aq, n + 1) < tol * max(1, abs(acc)):
                break
        return +acc


def siegel_g(a: SiegelIndex, tau, terms: int | None = None, tol: float = TAIL_TOLERANCE):
    """g_a(tau) = -q^(B2(a1)/2) e^(pi i a2 (a1-1)) prod (1 - q^(n+a1) e(a2))(1 - q^(n+1-a1) e(-a2))."""
    with mp.workdps(DPS):
        t = _as_tau(tau)
        a1 = mpf(a.a1.numerator) / a.a1.denominator
        a2 = mpf(a.a2.numerator) / a.a2.denominator
        val = -mpmath.exp(2j * mp.pi * t * B2(a1) / 2) * mpmath.expjpi(a2 * (a1 - 1))
        log_mag = mpf(0)
        for n, w1, w2, aq in _factor_pairs(a, t, terms):
            f = (1 - w1) * (1 - w2)
            val *= f
            log_mag += mpmath.log(abs(f))
            if terms is None and n >= 1 and _tail_bound(aq, n + 1) < tol * max(1, abs(log_mag)):
                break
        return +val


# ------------------------------------------------------------ orbits


def act(a: SiegelIndex, c: int) -> SiegelIndex:
    """Right action of beta_c = [[1, 0], [c, 1]]: (a1, a2) -> (a1 + c a2, a2)."""
    return SiegelIndex(a.a1 + c * a.a2, a.a2)


def orbit(p: int, c: int) -> list[SiegelIndex]:
    """The 2(p - 1) indices of A beta_c, A = {(k/p, 0)} u {(0, k/p)}."""
    if p < 3:
        raise ValueError("p must be an odd prime >= 3")
    base = [SiegelIndex.of(k, 0, p) for k in range(1, p)]
    base += [SiegelIndex.of(0, k, p) for k in range(1, p)]
    return [act(a, c) for a in base]


def log_abs_Uc(p: int, c: int, tau, tol: float = TAIL_TOLERANCE):
    """log |U_c(tau)| = 12 p * sum over A beta_c of log |g_a(tau)|."""
    with mp.workdps(DPS):
        return 12 * p * mpmath.fsum(log_abs_siegel_g(a, tau, tol=tol) for a in orbit(p, c))


def pu_main_term(p: int, c: int, abs_q: float) -> float:
    lq = math.log(abs_q)
    return (p - 1) ** 2 * lq if c % p == 0 else -2 * (p - 1) * lq


def pu_envelope(p: int, c: int, abs_q: float) -> float:
    inv = -math.log(abs_q)
    if c % p == 0:
        return 4 * math.pi**2 * p * p / inv + 12 * p * math.log(p) + 77 * p * p * abs_q
    return 8 * math.pi**2 * p * p / inv + 72 * p * p * abs_q


# ------------------------------------------------------------ checks


class Check(NamedTuple):
    lhs: float
    bound: float
    passed: bool


def pga_residual(a: SiegelIndex, tau) -> float:
    """log|g_a| minus its leading term and first two product factors."""
    with mp.workdps(DPS):
        t = _as_tau(tau)
        a1 = mpf(a.a1.numerator) / a.a1.denominator
        main = B2(a1) / 2 * (-2 * mp.pi * t.imag)
        for n, w1, w2, _ in _factor_pairs(a, t, 1):
            main += mpmath.log(abs(1 - w1)) + mpmath.log(abs(1 - w2))
        return float(log_abs_siegel_g(a, t) - main)


def check_pga(a: SiegelIndex, tau) -> Check:
    r = abs(pga_residual(a, tau))
    aq = DomainPoint(complex(tau.tau if isinstance(tau, DomainPoint) else tau)).abs_q
    return Check(r, 3 * aq, r <= 3 * aq)


def check_pu(p: int, c: int, tau) -> Check:
    point = tau if isinstance(tau, DomainPoint) else DomainPoint(complex(tau))
    aq = point.abs_q
    dev = abs(float(log_abs_Uc(p, c, point)) - pu_main_term(p, c, aq))
    env = pu_envelope(p, c, aq)
    return Check(dev, env, dev <= env)


def check_lemma_llogz(z: complex, N: int) -> Check:
    """|sum_{k<=N} log|1 - z^k|| against (pi^2/6) / log|1/z|."""
    az = abs(z)
    if not 0 < az < 1:
        raise ValueError("need 0 < |z| < 1")
    if N < 1:
        raise ValueError("N must be positive")
    k = np.arange(1, N + 1, dtype=np.float64)
    powers = np.exp(k * np.log(complex(z)))
    lhs = abs(float(np.sum(np.log(np.abs(1 - powers)))))
    bound = math.pi**2 / 6 / -math.log(az)
    return Check(lhs, bound, lhs <= bound)


def check_basic_inequality(z: complex, r: float) -> Check:
    """|log(1 + z)| <= -log(1 - r) / r * |z| for |z| <= r < 1 (principal log)."""
    if not 0 < r < 1:
        raise ValueError("need 0 < r < 1")
    if abs(z) > r:
        raise ValueError(f"|z| = {abs(z)} exceeds r = {r}")
    with mp.workdps(DPS):
        lhs = abs(mpmath.log1p(mpc(z)))
        bound = -mpmath.log(1 - mpf(r)) / r * abs(mpc(z))
        # equality is attained at z = -r; allow for rounding there
        ok = lhs <= bound * (1 + EQUALITY_RTOL)
    return Check(float(lhs), float(bound), bool(ok))


# ------------------------------------------------------------ sampling


def random_domain_point(rng: random.Random) -> DomainPoint:
    """Uniform on Re in [-1/2, 3/2], Im in [sqrt3/2, 10], restricted to D + Z."""
    while True:
        tau = complex(rng.uniform(-0.5, 1.5), rng.uniform(math.sqrt(3) / 2, 10))
        if abs(tau - round(tau.real)) >= 1:
            return DomainPoint(tau)


def _random_index(rng: random.Random, p: int) -> SiegelIndex:
    while True:
        a1, a2 = rng.randrange(p), rng.randrange(p)
        if a1 or a2:
            return SiegelIndex.of(a1, a2, p)


@dataclass
class CheckSummary:
    name: str
    samples: int
    violations: int
    worst_ratio: float

    @property
    def passed(self) -> bool:
        return self.samples > 0 and self.violations == 0


def _summarize(name: str, rows: list[tuple], sink) -> CheckSummary:
    worst, bad = 0.0, 0
    for i, (lhs, bound, ok) in enumerate(rows):
        if not ok:
            bad += 1
        if bound > 0:
            worst = max(worst, lhs / bound)
        if sink is not None:
            sink.writerow([name, i, repr(lhs), repr(bound), int(ok)])
    return CheckSummary(name, len(rows), bad, worst)


def verify_units(pga_samples: int = 1000, pu_samples: int = 100,
                 llogz_samples: int = 10_000, loglog_samples: int = 1000,
                 seed: int = 0, primes: Iterable[int] = (5, 7, 11, 13),
                 csv_path: str | None = None) -> list[CheckSummary]:
    """Random spot checks of the four Siegel-function estimates.

    Each (check, sample) row is optionally written to ``csv_path`` as
    ``check, sample, lhs, bound, pass``.
    """
    rng = random.Random(seed)
    primes = tuple(primes)
    fh = open(csv_path, "w", newline="") if csv_path else None
    sink = None
    if fh is not None:
        sink = csv.writer(fh)
        sink.writerow(["check", "sample", "lhs", "bound", "pass"])
    try:
        rows = []
        for _ in range(pga_samples):
            p = rng.choice(primes)
            rows.append(tuple(check_pga(_random_index(rng, p), random_domain_point(rng))))
        out = [_summarize("pga", rows, sink)]

        rows = []
        for i in range(pu_samples):
            p = rng.choice(primes)
            # alternate the two branches so both are always covered
            c = p * rng.randrange(-2, 3) if i % 2 == 0 else rng.randrange(1, 4 * p)
            if i % 2 and c % p == 0:
                c += 1
            rows.append(tuple(check_pu(p, c, random_domain_point(rng))))
        out.append(_summarize("pu", rows, sink))

        rows = []
        for _ in range(llogz_samples):
            r = rng.uniform(1e-6, 0.99)
            z = r * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))
            rows.append(tuple(check_lemma_llogz(z, rng.randint(1, 1000))))
        out.append(_summarize("llogz", rows, sink))

        rows = []
        for _ in range(loglog_samples):
            r = rng.uniform(1e-6, 0.999)
            rho = r * math.sqrt(rng.random())
            t = rng.uniform(0, 2 * math.pi)
            rows.append(tuple(check_basic_inequality(complex(rho * math.cos(t), rho * math.sin(t)), r)))
        out.append(_summarize("loglog", rows, sink))
        return out
    finally:
        if fh is not None:
            fh.close()
