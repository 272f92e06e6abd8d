import random

import pytest
from hypothesis import given, strategies as st

from cartan_sieve.intpoly import IntPolynomial, derivative, resultant, sylvester_resultant
from oracles import eratosthenes, resultant_vanishes_mod_p

coeff_lists = st.lists(st.integers(-50, 50), min_size=1, max_size=7)
polys = coeff_lists.map(IntPolynomial).filter(bool)


def test_resultant_examples():
    assert resultant(IntPolynomial([3, 2]), IntPolynomial([-5, 1])) == -13
    assert resultant(IntPolynomial([1, 0, 1]), IntPolynomial([-1, 0, 1])) == 4
    assert resultant(IntPolynomial([1]), IntPolynomial([7, 0, 3])) == 1
    assert resultant(IntPolynomial([5]), IntPolynomial([1, 2, 1])) == 25


def test_resultant_zero_polynomial():
    assert resultant(IntPolynomial(), IntPolynomial([1, 1])) == 0


def test_basic_operations():
    p = IntPolynomial([1, 2, 3])
    assert p.degree == 2 and p.lc == 3
    assert str(p) == "3*X^2 + 2*X + 1"
    assert str(IntPolynomial([-1, 0, -1])) == "-X^2 - 1"
    assert p(2) == 17
    assert derivative(p) == IntPolynomial([2, 6])
    assert (p * IntPolynomial([0, 1])).coeffs == (0, 1, 2, 3)
    assert p - p == IntPolynomial()
    assert IntPolynomial().degree == -1
    assert IntPolynomial([2, 4]).content() == 2
    assert IntPolynomial([2, 4]).exact_div(2) == IntPolynomial([1, 2])
    with pytest.raises(ArithmeticError):
        IntPolynomial([2, 3]).exact_div(2)
    with pytest.raises(AttributeError):
        p.coeffs = (1,)


@given(polys, polys)
def test_subresultant_matches_sylvester(p, q):
    assert resultant(p, q) == sylvester_resultant(p, q)


@given(polys, polys)
def test_resultant_antisymmetry(p, q):
    sign = -1 if p.degree * q.degree % 2 else 1
    assert resultant(q, p) == sign * resultant(p, q)


@given(polys, polys, polys)
def test_resultant_multiplicative(p, q, r):
    assert resultant(p * q, r) == resultant(p, r) * resultant(q, r)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4),
       st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.integers(1, 5))
def test_resultant_from_roots(roots_p, roots_q, lead):
    # Res(lead * prod (X - a), prod (X - b)) = lead^deg q * prod (a - b)
    p = IntPolynomial([lead])
    for a in roots_p:
        p = p * IntPolynomial([-a, 1])
    q = IntPolynomial([1])
    for b in roots_q:
        q = q * IntPolynomial([-b, 1])
    expected = lead ** len(roots_q)
    for a in roots_p:
        for b in roots_q:
            expected *= a - b
    assert resultant(p, q) == expected


def _random_pair(rng, p):
    def poly():
        deg = rng.randint(1, 4)
        c = [rng.randint(-10**4, 10**4) for _ in range(deg)] + [rng.choice([-1, 1]) * rng.randint(1, 10**4)]
        return c
    a, b = poly(), poly()
    if rng.random() < 0.5:
        # plant a common root r mod p: shift b's constant term so that b(r) = 0 mod p
        r = rng.randrange(p)
        ar = sum(c * r**i for i, c in enumerate(a)) % p
        a[0] -= ar
        br = sum(c * r**i for i, c in enumerate(b)) % p
        b[0] -= br
    return a, b


def test_resultant_mod_p_detects_common_roots():
    rng = random.Random(8)
    primes = eratosthenes(97)
    for _ in range(300):
        p = rng.choice(primes)
        a, b = _random_pair(rng, p)
        res = resultant(IntPolynomial(a), IntPolynomial(b))
        vanishes, _ = resultant_vanishes_mod_p(a, b, p)
        assert (res % p == 0) == vanishes, (a, b, p)
