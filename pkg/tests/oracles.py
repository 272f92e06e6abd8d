"""Slow, independent reference implementations used only by the tests.

None of these import the package under test.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import mpmath
import numpy as np


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def eratosthenes(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


def trial_factor(n: int) -> dict[int, int]:
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


def kronecker_by_definition(a: int, n: int) -> int:
    """Multiplicative extension of Legendre symbols (Euler's criterion)."""
    if n == 0:
        raise ValueError
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    for p, e in trial_factor(n).items():
        if p == 2:
            if a % 2 == 0:
                return 0
            s = 1 if a % 8 in (1, 7) else -1
        else:
            r = pow(a % p, (p - 1) // 2, p)
            s = 0 if a % p == 0 else (1 if r == 1 else -1)
        result *= s**e
    return result


def class_number_brute(d: int) -> int:
    """Count primitive reduced forms of discriminant d < 0 by plain enumeration."""
    count = 0
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                count += 1
        a += 1
    return count


def class_number_analytic(d: int) -> int:
    """h(d) = -(w / 2|d|) sum_{a<|d|} chi_d(a) a, for fundamental d < 0."""
    w = {-3: 6, -4: 4}.get(d, 2)
    s = sum(kronecker_by_definition(d, a) * a for a in range(1, -d))
    h = Fraction(-w * s, 2 * -d)
    assert h.denominator == 1
    return int(h)


def hilbert_polynomial_kleinj(d: int, dps: int = 80) -> list[int]:
    """H_d by multiplying (X - 1728 kleinj(tau)) over enumerated reduced forms."""
    forms = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                forms.append((a, b))
        a += 1
    with mpmath.workdps(dps):
        poly = [mpmath.mpc(1)]
        for a, b in forms:
            tau = (-b + mpmath.sqrt(d)) / (2 * a)
            j = 1728 * mpmath.kleinj(tau)
            out = [mpmath.mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                out[i + 1] += c
                out[i] -= c * j
            poly = out
        coeffs = [int(mpmath.nint(c.real)) for c in poly]
        assert all(abs(c.imag) < 1e-6 and abs(c.real - n) < 1e-6 for c, n in zip(poly, coeffs))
    return coeffs


# ---- polynomials over F_p and F_{p^2}


def _poly_mod(coeffs, p):
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return c


def _nonresidue(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError


def roots_in_fp2(coeffs, p: int) -> np.ndarray:
    """Boolean mask over F_{p^2} (elements x + y t) of the zeros of the reduction.

    F_{p^2} = F_p[t] / (t^2 - n) for odd p, F_2[t] / (t^2 + t + 1) for p = 2.
    """
    xs, ys = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    c = _poly_mod(coeffs, p)
    if not c:
        return np.ones(xs.size, dtype=bool)
    n = _nonresidue(p) if p > 2 else None
    acc_x = np.zeros_like(xs)
    acc_y = np.zeros_like(xs)
    for a in reversed(c):
        # (u + v t)(x + y t)
        if p == 2:
            # t^2 = t + 1
            uy_vy = acc_y * ys
            nx = acc_x * xs + uy_vy
            ny = acc_x * ys + acc_y * xs + uy_vy
        else:
            nx = acc_x * xs + n * acc_y * ys
            ny = acc_x * ys + acc_y * xs
        acc_x = (nx + a) % p
        acc_y = ny % p
    return (acc_x == 0) & (acc_y == 0)


def _gcd_degree_mod_p(a, b, p) -> int:
    a, b = _poly_mod(a, p), _poly_mod(b, p)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            f = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[i + shift] = (a[i + shift] - f * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def resultant_vanishes_mod_p(pc, qc, p: int) -> tuple[bool, bool]:
    """Decide Res(P, Q) = 0 mod p from the reductions, without computing Res.

    Returns (vanishes, needed_gcd): the second flag is set when no common
    root exists in F_{p^2} but the reductions share an irreducible factor of
    degree >= 3, which only a gcd over F_p can see.
    """
    m, n = len(pc) - 1, len(qc) - 1
    if m == 0 or n == 0:
        const, other = (pc[0], n) if m == 0 else (qc[0], m)
        return (other > 0 and const % p == 0) if m + n else False, False
    if pc[-1] % p == 0 and qc[-1] % p == 0:
        return True, False
    bar_p, bar_q = _poly_mod(pc, p), _poly_mod(qc, p)
    if not bar_p or not bar_q:
        return True, False
    if len(bar_p) == 1 or len(bar_q) == 1:
        return False, False
    common = roots_in_fp2(pc, p) & roots_in_fp2(qc, p)
    if common.any():
        return True, False
    if _gcd_degree_mod_p(pc, qc, p) >= 1:
        return True, True
    return False, False


def naive_verybad(n: int, m: int, moduli=(), discriminants=()) -> list[int]:
    """Primes in [n, m) that are nonzero squares mod every modulus and split for every d."""
    squares = {q: {k * k % q for k in range(1, q)} - {0} for q in moduli}
    out = []
    for p in range(max(n, 2), m):
        if not is_prime_trial(p):
            continue
        if any(p % q not in squares[q] for q in moduli):
            continue
        if all(kronecker_by_definition(d, p) == 1 for d in discriminants):
            out.append(p)
    return out
