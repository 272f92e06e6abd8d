"""Reduced positive-definite binary quadratic forms and class numbers.

Discriminants are passed as plain negative ints (``-87``, ``-12``).  Forms are
primitive, so the number of reduced forms is the class number of the order of
that discriminant, maximal or not.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

__all__ = [
    "QuadForm",
    "Discriminant",
    "check_discriminant",
    "is_fundamental",
    "reduced_forms",
    "class_number",
    "discriminant_table",
    "CLASS_NUMBER_ONE",
    "TABLE_DISCRIMINANTS",
    "DEFAULT_DISCRIMINANTS",
    "DEFAULT_DPRIME",
]

# Printed discriminant lists of class number 1..4, in their original order.
TABLE_DISCRIMINANTS: dict[int, tuple[int, ...]] = {
    1: (-3, -4, -7, -8, -11, -19, -43, -67, -163),
    2: (-20, -24, -40, -52, -15, -88, -35, -148, -51, -232, -91, -115, -123,
        -187, -235, -267, -403, -427),
    3: (-23, -31, -59, -83, -107, -139, -211, -283, -307, -331, -379, -499,
        -547, -643, -883, -907),
    4: (-56, -68, -84, -120, -132, -136, -39, -168, -184, -55, -228, -280,
        -292, -312, -328, -340, -372, -388, -408, -520, -532, -568, -155,
        -708, -760, -772, -195, -203, -219, -1012, -259, -291, -323, -355,
        -435, -483, -555, -595, -627, -667, -715, -723, -763, -795, -955,
        -1003, -1027, -1227, -1243, -1387, -1411, -1435, -1507, -1555),
}
CLASS_NUMBER_ONE = TABLE_DISCRIMINANTS[1]

# The sieve's default discriminant list: class number <= 4, then -87 (h = 6).
DEFAULT_DISCRIMINANTS: tuple[int, ...] = (
    TABLE_DISCRIMINANTS[1] + TABLE_DISCRIMINANTS[2]
    + TABLE_DISCRIMINANTS[3] + TABLE_DISCRIMINANTS[4] + (-87,)
)
# Sublist whose splitting conditions are encoded in the congruence wheel.
DEFAULT_DPRIME: tuple[int, ...] = (
    -3, -4, -15, -20, -7, -11, -39, -52, -51, -68, -19, -23, -87,
)


@dataclass(frozen=True, order=True)
class QuadForm:
    """Integral form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (a > 0 and abs(b) <= a <= c):
            return False
        if abs(b) == a or a == c:
            return b >= 0
        return True

    def tau(self) -> complex:
        """The CM point (-b + sqrt(disc)) / 2a in the upper half plane."""
        return complex(-self.b, (-self.discriminant) ** 0.5) / (2 * self.a)


def check_discriminant(d: int) -> int:
    d = int(d)
    if d >= 0 or d % 4 not in (0, 1):
        raise ValueError(f"{d} is not a negative discriminant (= 0, 1 mod 4)")
    return d


def _squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def is_fundamental(d: int) -> bool:
    """True when ``d`` is the discriminant of a maximal imaginary order."""
    check_discriminant(d)
    if d % 4 == 1:
        return _squarefree(d)
    m = d // 4
    return m % 4 in (2, 3) and _squarefree(m)


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant with derived data computed on demand."""

    value: int

    def __post_init__(self):
        check_discriminant(self.value)

    @property
    def is_fundamental(self) -> bool:
        return is_fundamental(self.value)

    @property
    def class_number(self) -> int:
        return class_number(self.value)

    def conductor(self) -> int:
        """Largest f with value / f^2 a discriminant."""
        for f in range(isqrt(-self.value), 0, -1):
            if self.value % (f * f) == 0 and (self.value // (f * f)) % 4 in (0, 1):
                return f
        return 1


@lru_cache(maxsize=4096)
def _reduced_forms(d: int) -> tuple[QuadForm, ...]:
    forms = []
    a_max = isqrt(-d // 3)
    for a in range(1, a_max + 1):
        # b has the parity of d and -a < b <= a
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
    forms.sort(key=lambda f: (f.a, f.b))
    return tuple(forms)


def reduced_forms(d: int | Discriminant) -> list[QuadForm]:
    """Primitive reduced forms of discriminant ``d``, sorted by (a, b).

    >>> [(f.a, f.b, f.c) for f in reduced_forms(-23)]
    [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    """
    d = d.value if isinstance(d, Discriminant) else check_discriminant(d)
    return list(_reduced_forms(d))


def class_number(d: int | Discriminant) -> int:
    return len(reduced_forms(d))


def discriminant_table(h_max: int = 4, ceiling: int = 20000) -> dict[int, list[int]]:
    """Fundamental discriminants -D with D <= ceiling, grouped by class number.

    Each list is sorted by decreasing value (-3, -4, -7, ...).
    """
    if not 1 <= h_max <= 6:
        raise ValueError("h_max must lie in [1, 6]")
    table: dict[int, list[int]] = {h: [] for h in range(1, h_max + 1)}
    for n in range(3, ceiling + 1):
        d = -n
        if d % 4 not in (0, 1) or not is_fundamental(d):
            continue
        h = class_number(d)
        if h <= h_max:
            table[h].append(d)
    return table
