"""Dense univariate polynomials over the integers.

Coefficients are stored little-endian (index = degree) as Python ints.  The
resultant uses the subresultant remainder sequence, which stays fraction
free and keeps coefficient growth in check; the Sylvester determinant
(Bareiss elimination) is kept as an independent reference.
"""
from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Iterable, Sequence

__all__ = ["IntPolynomial", "derivative", "resultant", "sylvester_resultant"]


class IntPolynomial:
    """Immutable integer polynomial; the zero polynomial has degree -1."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, k: int) -> "IntPolynomial":
        return cls((k,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}*{mono}" if mono else str(abs(a))
            terms.append(("- " if a < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        other = _coerce(other)
        if not self or not other:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "IntPolynomial":
        """Divide every coefficient by ``k``; raises if not exact."""
        out = []
        for a in self.coeffs:
            q, r = divmod(a, k)
            if r:
                raise ArithmeticError(f"{k} does not divide {self!r}")
            out.append(q)
        return IntPolynomial(out)

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def mod(self, p: int) -> "IntPolynomial":
        return IntPolynomial(a % p for a in self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * a for k, a in enumerate(self.coeffs) if k)


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    return IntPolynomial(p)


def derivative(p: IntPolynomial | Sequence[int]) -> IntPolynomial:
    return _coerce(p).derivative()


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of lc(b)^(deg a - deg b + 1) * a by b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        f = lb**e
        r = [x * f for x in r]
    return r


def resultant(p, q) -> int:
    """Res(p, q) = lc(p)^deg(q) * prod q(alpha) over the roots alpha of p.

    Conventions: zero if either argument is zero; k^deg(q) if p = k is a
    nonzero constant (so Res(1, q) = 1).
    """
    p, q = _coerce(p), _coerce(q)
    if not p or not q:
        return 0
    a, b = list(p.coeffs), list(q.coeffs)
    sign = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) * (len(b) - 1) % 2:
            sign = -sign
    ca, cb = reduce(gcd, a), reduce(gcd, b)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    g = h = 1
    # subresultant PRS; h is kept as an exact rational power via integer division
    while len(b) > 1:
        delta = len(a) - len(b)
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            sign = -sign
        r = _prem(a, b)
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [x // div for x in r]
        g = a[-1]
        if delta:
            h = g**delta // h ** (delta - 1)
    da = len(a) - 1
    if da == 0:
        h = 1
    else:
        h = b[-1] ** da // h ** (da - 1)
    return sign * t * h


def sylvester_resultant(p, q) -> int:
    """Determinant of the Sylvester matrix by fraction-free Bareiss elimination."""
    p, q = _coerce(p), _coerce(q)
    if not p or not q:
        return 0
    m, n = p.degree, q.degree
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(n):
        rows.append([0] * i + pc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + qc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def _bareiss_det(mat: list[list[int]]) -> int:
    m = [row[:] for row in mat]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
