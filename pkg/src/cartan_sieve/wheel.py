"""Congruence wheels: residue classes mod M that survive splitting conditions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod

import numpy as np

from .ntheory import factorize, kronecker
from .quadforms import is_fundamental

__all__ = [
    "CongruenceWheel",
    "squares_congruences",
    "wheel_for_discriminants",
    "crt_combine",
    "DEFAULT_MODULI",
]

DEFAULT_MODULI = (3, 4, 5, 7, 11, 13, 17, 19, 23, 29)


@dataclass(frozen=True, eq=False)
class CongruenceWheel:
    """Modulus ``modulus`` and the strictly increasing residues kept mod it."""

    modulus: int
    residues: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.residues, dtype=np.int64)
        if r.size and (r[0] < 0 or r[-1] >= self.modulus or np.any(np.diff(r) <= 0)):
            raise ValueError("residues must be strictly increasing in [0, modulus)")
        r.setflags(write=False)
        object.__setattr__(self, "residues", r)

    def __len__(self) -> int:
        return int(self.residues.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CongruenceWheel)
            and self.modulus == other.modulus
            and np.array_equal(self.residues, other.residues)
        )

    def __contains__(self, n: int) -> bool:
        r = n % self.modulus
        i = np.searchsorted(self.residues, r)
        return bool(i < self.residues.size and self.residues[i] == r)

    def __repr__(self) -> str:
        return f"CongruenceWheel(modulus={self.modulus}, residues={len(self)})"


def crt_combine(m1: int, r1: np.ndarray, m2: int, r2) -> np.ndarray:
    """All x mod m1*m2 with x = a mod m1, x = b mod m2 for a in r1, b in r2."""
    if gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    if m1 * m2 >= 2**62:
        raise OverflowError("combined modulus too large for int64 residues")
    r1 = np.asarray(r1, dtype=np.int64)
    r2 = np.asarray(r2, dtype=np.int64)
    inv = pow(m1, -1, m2)
    # x = a + m1 * ((b - a) * inv mod m2)
    t = ((r2[None, :] - r1[:, None] % m2) % m2) * inv % m2
    return (r1[:, None] + m1 * t).ravel()


def _nonzero_squares(n: int) -> list[int]:
    return sorted({k * k % n for k in range(1, n // 2 + 1)} - {0})


def squares_congruences(moduli) -> CongruenceWheel:
    """Residues mod prod(moduli) that are nonzero squares mod every modulus.

    >>> w = squares_congruences([3, 4, 5]); w.modulus, w.residues.tolist()
    (60, [1, 49])
    """
    moduli = [int(m) for m in moduli]
    if any(m < 3 for m in moduli):
        raise ValueError("moduli must be >= 3")
    for i, a in enumerate(moduli):
        for b in moduli[i + 1 :]:
            if gcd(a, b) != 1:
                raise ValueError(f"moduli {a} and {b} are not coprime")
    modulus, residues = 1, np.zeros(1, dtype=np.int64)
    for m in moduli:
        residues = crt_combine(modulus, residues, m, _nonzero_squares(m))
        modulus *= m
    residues.sort()
    return CongruenceWheel(modulus, residues)


def _local_parts(d: int) -> tuple[int, list[int]]:
    """Split a fundamental discriminant into its 2-part and odd primes.

    Returns (e, qs) with d = e * prod(q*) where q* = +-q = 1 mod 4 and
    e in {1, -4, 8, -8}.
    """
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    odd = d
    while odd % 2 == 0:
        odd //= 2
    qs = [p for p, _ in factorize(abs(odd)).factors]
    star = prod(q if q % 4 == 1 else -q for q in qs)
    e = d // star
    if e not in (1, -4, 8, -8):
        raise ValueError(f"unexpected 2-part {e} of {d}")
    return e, qs


def wheel_for_discriminants(discriminants) -> CongruenceWheel:
    """Residues r mod M (coprime to M) with kronecker(d, r) = 1 for every d.

    For fundamental d the character kronecker(d, .) factors into local pieces:
    a character mod 4 or 8 and Legendre symbols mod each odd q | d, so the
    admissible set is a union of CRT products of local classes.
    """
    parts = [_local_parts(int(d)) for d in discriminants]
    odd_primes = sorted({q for _, qs in parts for q in qs})
    twos = {e for e, _ in parts if e != 1}
    two_mod = 8 if twos & {8, -8} else (4 if twos else 1)

    two_classes = [r for r in range(two_mod) if r % 2] if two_mod > 1 else [1]
    keep = []
    for two in two_classes:
        for signs in product((1, -1), repeat=len(odd_primes)):
            local = dict(zip(odd_primes, signs))
            ok = True
            for e, qs in parts:
                value = kronecker(e, two) if e != 1 else 1
                for q in qs:
                    value *= local[q]
                if value != 1:
                    ok = False
                    break
            if ok:
                keep.append((two, signs))

    modulus = two_mod * prod(odd_primes)
    pieces = []
    for two, signs in keep:
        m, res = two_mod, np.array([two % two_mod if two_mod > 1 else 0], dtype=np.int64)
        for q, s in zip(odd_primes, signs):
            cls = [r for r in range(1, q) if kronecker(r, q) == s]
            res = crt_combine(m, res, q, cls)
            m *= q
        pieces.append(res)
    residues = np.unique(np.concatenate(pieces)) if pieces else np.zeros(0, dtype=np.int64)
    return CongruenceWheel(modulus, residues)
