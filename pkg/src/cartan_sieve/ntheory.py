"""Integer primitives: Kronecker symbol, primality, factorization.

Everything here works on plain Python ints (gmpy2 is used internally for the
large gcd/product work in :func:`factor_in_range`).  All functions are pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import gmpy2
import numpy as np

__all__ = [
    "PrimeFactorization",
    "RangeFactors",
    "kronecker",
    "is_prime",
    "is_pseudoprime",
    "primes_between",
    "pollard_brent",
    "factorize",
    "factor_in_range",
    "DETERMINISTIC_MR_BOUND",
]

# Miller-Rabin with the first 13 prime bases is exact below this bound
# (Sorenson & Webster 2015).
DETERMINISTIC_MR_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = _MR_BASES + (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# (a|2) indexed by a mod 8
_KRONECKER_TWO = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n).

    Extends the Jacobi symbol to every nonzero ``n``:  (a|2) is 0, 1, -1 for
    a even, a = +-1 mod 8, a = +-3 mod 8, and (a|-1) is -1 exactly when a < 0.

    >>> kronecker(-3, 11), kronecker(-4, 13), kronecker(-7, 7)
    (-1, 1, 0)
    """
    if n == 0:
        raise ValueError("kronecker symbol (a|0) is not supported")
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v & 1:
            sign *= _KRONECKER_TWO[a & 7]
    # n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n & 7 in (3, 5):
                sign = -sign
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def _strong_probable_prime(n: int, base: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge's method A for (D, P, Q); n odd, > 2 and not a square.
    d = 5
    while True:
        k = kronecker(d, n)
        if k == -1:
            break
        if k == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
    p, q = 1, (1 - d) // 4
    delta = n + 1
    s = (delta & -delta).bit_length() - 1
    m = delta >> s
    # binary ladder for U_m, V_m, Q^m
    u, v, qk = 0, 2, 1
    inv2 = (n + 1) // 2
    for bit in bin(m)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_pseudoprime(n: int) -> bool:
    """Single strong base-2 test after a few small-prime divisions.

    Never rejects a prime; may accept a strong base-2 pseudoprime.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES[:8]:
        if n % p == 0:
            return n == p
    return _strong_probable_prime(n, 2)


def is_prime(n: int) -> bool:
    """Primality test, exact below :data:`DETERMINISTIC_MR_BOUND`.

    Below the bound this is Miller-Rabin on the first thirteen prime bases,
    which is a proof.  Above it the answer is Baillie-PSW (strong base-2 test
    plus strong Lucas test) which has no known counterexample.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 97 * 97:
        return True
    if n < DETERMINISTIC_MR_BOUND:
        return all(_strong_probable_prime(n, b) for b in _MR_BASES)
    if not _strong_probable_prime(n, 2):
        return False
    if isqrt(n) ** 2 == n:
        return False
    return _strong_lucas_probable_prime(n)


def primes_between(lo: int, hi: int) -> np.ndarray:
    """All primes p with lo <= p <= hi as an int64 array (segmented sieve)."""
    lo = max(lo, 2)
    if hi < lo:
        return np.zeros(0, dtype=np.int64)
    base = _base_primes(isqrt(hi))
    mark = np.ones(hi - lo + 1, dtype=bool)
    for p in base:
        p = int(p)
        start = max(p * p, (lo + p - 1) // p * p)
        if start > hi:
            continue
        mark[start - lo :: p] = False
    return np.nonzero(mark)[0].astype(np.int64) + lo


def _base_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def pollard_brent(n: int, budget: int = 200_000, seed: int = 1) -> int | None:
    """Find a nontrivial factor of composite ``n`` with Brent's rho variant.

    Deterministic: polynomial constants are tried in the order seed, seed+1, ...
    Returns ``None`` when ``budget`` squarings are exhausted.
    """
    if n % 2 == 0:
        return 2
    c = seed
    spent = 0
    batch = 128
    while spent < budget:
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            spent += r
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(batch, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += batch
            spent += k
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        c += 1
    return None


@dataclass(frozen=True)
class PrimeFactorization:
    """Factorization of ``value``; ``factors`` hold (prime, exponent) pairs.

    When ``complete`` is false, ``cofactor`` is the part that resisted
    splitting (a composite with no prime factor found).
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    complete: bool
    cofactor: int = 1

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


@dataclass(frozen=True)
class RangeFactors:
    """Primes in [lo, hi] dividing ``n``.

    ``complete`` asserts that no other prime in range divides ``n``;
    otherwise ``residual`` is the unresolved cofactor.
    """

    n: int
    lo: int
    hi: int
    primes: tuple[int, ...]
    complete: bool
    residual: int = 1


def _remove_prime(n: int, p: int) -> tuple[int, int]:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return n, e


def factorize(n: int, budget: int = 200_000, seed: int = 1) -> PrimeFactorization:
    """Full factorization by small trial division then Pollard-Brent."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    found: dict[int, int] = {}
    m = n
    for p in _base_primes(10_000):
        p = int(p)
        if p * p > m:
            break
        m, e = _remove_prime(m, p)
        if e:
            found[p] = e
    stuck = 1
    stack = [m] if m > 1 else []
    left = budget
    while stack:
        c = stack.pop()
        if c < 10_000 * 10_000 or is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        root = isqrt(c)
        if root * root == c:
            stack += [root, root]
            continue
        d = pollard_brent(c, budget=left, seed=seed)
        if d is None:
            stuck *= c
            continue
        left = max(left // 2, 1000)
        stack += [d, c // d]
    factors = tuple(sorted(found.items()))
    return PrimeFactorization(n, factors, stuck == 1, stuck)


# Primes up to this bound are handled by exact gcd against segment products.
DEFAULT_SIEVE_LIMIT = 10**8
_SEGMENT = 1 << 21


@lru_cache(maxsize=128)
def _segment(lo: int, hi: int) -> tuple[np.ndarray, "gmpy2.mpz"]:
    primes = primes_between(lo, hi)
    return primes, _product(primes)


def _product(primes) -> "gmpy2.mpz":
    values = [gmpy2.mpz(int(p)) for p in primes]
    if not values:
        return gmpy2.mpz(1)
    while len(values) > 1:
        nxt = [values[i] * values[i + 1] for i in range(0, len(values) - 1, 2)]
        if len(values) % 2:
            nxt.append(values[-1])
        values = nxt
    return values[0]


def _split_primes(g, primes: np.ndarray) -> list[int]:
    """Primes from ``primes`` dividing ``g`` (product-tree descent)."""
    if len(primes) <= 64:
        return [int(p) for p in primes if g % int(p) == 0]
    mid = len(primes) // 2
    out = []
    for half in (primes[:mid], primes[mid:]):
        h = gmpy2.gcd(g, _product(half))
        if h > 1:
            out += _split_primes(h, half)
    return out


def factor_in_range(
    n: int,
    lo: int,
    hi: int,
    budget: int = 200_000,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    seed: int = 1,
) -> RangeFactors:
    """Every prime p in [lo, hi] dividing ``n``.

    Primes up to ``sieve_limit`` are found exactly by gcd with segment
    products.  Beyond that the remaining cofactor is split with Pollard-Brent
    under ``budget``; if a composite piece resists, the result is marked
    incomplete and the piece is kept in ``residual``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 2 <= lo <= hi:
        raise ValueError("need 2 <= lo <= hi")
    found: list[int] = []
    m = gmpy2.mpz(n)
    # beyond sieve_limit every small prime must be stripped for the
    # cofactor argument below to hold
    first = lo if hi <= sieve_limit else 2
    reach = min(hi, sieve_limit)
    k = first // _SEGMENT
    while k * _SEGMENT <= reach and m > 1:
        seg_lo = max(k * _SEGMENT, first)
        seg_hi = min((k + 1) * _SEGMENT - 1, reach)
        primes, prod = _segment(seg_lo, seg_hi)
        g = gmpy2.gcd(m, prod)
        if g > 1:
            for p in _split_primes(g, primes):
                m, _ = _remove_prime(m, p)
                if lo <= p <= hi:
                    found.append(p)
        k += 1
    if hi <= sieve_limit or m == 1:
        return RangeFactors(n, lo, hi, tuple(sorted(found)), True)

    # cofactor has no prime factor <= sieve_limit
    stuck = gmpy2.mpz(1)
    left = budget
    stack = [int(m)]
    small_square = (sieve_limit + 1) ** 2
    while stack:
        c = stack.pop()
        if c < small_square or is_prime(c):
            if lo <= c <= hi:
                found.append(c)
            continue
        root = isqrt(c)
        if root * root == c:
            stack += [root, root]
            continue
        d = pollard_brent(c, budget=left, seed=seed)
        if d is None:
            stuck *= c
            continue
        left = max(left // 2, 1000)
        stack += [d, c // d]
    return RangeFactors(
        n, lo, hi, tuple(sorted(set(found))), stuck == 1, int(stuck)
    )
