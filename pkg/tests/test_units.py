import cmath
import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from cartan_sieve.units import (
    B2,
    Q_DOMAIN_MAX,
    DomainPoint,
    SiegelIndex,
    act,
    check_basic_inequality,
    check_lemma_llogz,
    check_pga,
    check_pu,
    log_abs_siegel_g,
    log_abs_Uc,
    orbit,
    pu_envelope,
    random_domain_point,
    siegel_g,
    verify_units,
)


def _g_oracle(a1, a2, tau, terms=200, dps=40):
    """Plain truncated product, no tail logic."""
    with mpmath.workdps(dps):
        tau = mpmath.mpc(tau)
        a1, a2 = (mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator for x in (a1, a2))
        val = -mpmath.exp(2j * mpmath.pi * tau * (a1 * a1 - a1 + mpmath.mpf(1) / 6) / 2)
        val *= mpmath.exp(1j * mpmath.pi * a2 * (a1 - 1))
        for n in range(terms):
            # q^x means exp(2 pi i x tau), not a branch of the power of q
            val *= 1 - mpmath.exp(2j * mpmath.pi * ((n + a1) * tau + a2))
            val *= 1 - mpmath.exp(2j * mpmath.pi * ((n + 1 - a1) * tau - a2))
        return val


def test_bernoulli():
    assert B2(Fraction(0)) == Fraction(1, 6)
    assert B2(Fraction(1, 2)) == Fraction(-1, 12)
    assert B2(0.25) == pytest.approx(1 / 16 - 1 / 4 + 1 / 6)


def test_bernoulli_sum_identity():
    for n in range(2, 30):
        assert sum(B2(Fraction(k, n)) for k in range(1, n)) == Fraction(-(n - 1), 6 * n)


def test_siegel_index_normalization():
    a = SiegelIndex(Fraction(-1, 5), Fraction(7, 5))
    assert (a.a1, a.a2) == (Fraction(4, 5), Fraction(2, 5))
    with pytest.raises(ValueError):
        SiegelIndex(Fraction(1), Fraction(-2))


def test_siegel_g_against_oracle_at_i():
    a = SiegelIndex.of(1, 0, 2)
    ref = abs(_g_oracle(0.5, 0, 1j))
    assert abs(siegel_g(a, 1j)) == pytest.approx(float(ref), rel=1e-12)
    assert float(log_abs_siegel_g(a, 1j)) == pytest.approx(float(mpmath.log(ref)), abs=1e-12)


@settings(max_examples=40)
@given(st.integers(3, 13), st.data())
def test_siegel_g_against_oracle_random(p, data):
    a1 = data.draw(st.integers(0, p - 1))
    a2 = data.draw(st.integers(0 if a1 else 1, p - 1))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    tau = random_domain_point(rng).tau
    ref = _g_oracle(Fraction(a1, p), Fraction(a2, p), tau, terms=60)
    got = siegel_g(SiegelIndex.of(a1, a2, p), tau)
    assert abs(complex(got) - complex(ref)) <= 1e-12 * abs(complex(ref))


def test_truncated_product_matches_fixed_terms():
    a = SiegelIndex.of(2, 3, 7)
    tau = complex(0.3, 0.9)
    assert float(log_abs_siegel_g(a, tau)) == pytest.approx(
        float(log_abs_siegel_g(a, tau, terms=200)), abs=1e-14)


def test_orbit_examples():
    a0 = orbit(5, 0)
    assert len(a0) == 8
    assert set(a0) == {SiegelIndex.of(k, 0, 5) for k in range(1, 5)} | {
        SiegelIndex.of(0, k, 5) for k in range(1, 5)}
    a1 = orbit(5, 1)
    assert set(a1) == {SiegelIndex.of(k, 0, 5) for k in range(1, 5)} | {
        SiegelIndex.of(k, k, 5) for k in range(1, 5)}
    assert set(orbit(5, 10)) == set(a0)


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(-50, 50))
def test_orbit_size_and_shape(p, c):
    orb = orbit(p, c)
    assert len(orb) == len(set(orb)) == 2 * (p - 1)
    if c % p:
        b = pow(c, -1, p)
        # {(a, 0)} and {(a, ab)} with bc = 1 mod p
        expected = {SiegelIndex.of(k, 0, p) for k in range(1, p)} | {
            SiegelIndex.of(k, k * b, p) for k in range(1, p)}
        assert set(orb) == expected


def test_orbit_rejects_small_p():
    with pytest.raises(ValueError):
        orbit(2, 0)


def test_orbit_action_consistency():
    # |g_a(beta_c tau)| = |g_{a beta_c}(tau)|
    rng = random.Random(3)
    for _ in range(40):
        p = rng.choice([5, 7, 11])
        c = rng.randrange(-3, 4)
        a = SiegelIndex.of(rng.randrange(1, p), rng.randrange(p), p)
        tau = random_domain_point(rng).tau
        moved = tau / (c * tau + 1)
        lhs = log_abs_siegel_g(a, moved)
        rhs = log_abs_siegel_g(act(a, c), tau)
        assert float(lhs) == pytest.approx(float(rhs), abs=1e-10)


def test_uc_dominant_term_at_10i():
    tau = DomainPoint(10j)
    val = float(log_abs_Uc(5, 0, tau))
    main = 16 * (-20 * math.pi)
    assert abs(val - main) <= pu_envelope(5, 0, tau.abs_q)


def test_pga_and_pu_spot_checks():
    rng = random.Random(11)
    for _ in range(50):
        p = rng.choice([5, 7, 11, 13])
        tau = random_domain_point(rng)
        assert tau.in_domain() and tau.abs_q <= Q_DOMAIN_MAX * (1 + 1e-12)
        a = SiegelIndex.of(rng.randrange(p), rng.randrange(1, p), p)
        assert check_pga(a, tau).passed
    for c in (0, 7, 1, 3):
        assert check_pu(7, c, DomainPoint(complex(0.5, math.sqrt(3) / 2))).passed


def test_llogz_examples():
    r = check_lemma_llogz(0.5, 10)
    assert r.lhs == pytest.approx(1.2410, abs=1e-4)
    assert r.bound == pytest.approx(2.3731, abs=1e-4)
    assert r.passed
    assert check_lemma_llogz(1e-9, 5).lhs < 1e-8
    assert check_lemma_llogz(0.9, 50).passed
    with pytest.raises(ValueError):
        check_lemma_llogz(1.0, 3)


@given(st.floats(1e-6, 0.99), st.floats(0, 2 * math.pi), st.integers(1, 1000))
def test_llogz_property(r, t, n):
    assert check_lemma_llogz(cmath.rect(r, t), n).passed


def test_basic_inequality_examples():
    assert check_basic_inequality(0, 0.5).passed
    r = check_basic_inequality(0.5, 0.5)
    assert r.lhs == pytest.approx(0.4055, abs=1e-4) and r.bound == pytest.approx(0.6931, abs=1e-4)
    eq = check_basic_inequality(-0.5, 0.5)
    assert eq.passed and eq.lhs == pytest.approx(eq.bound, rel=1e-12)
    with pytest.raises(ValueError):
        check_basic_inequality(0.6, 0.5)


@given(st.floats(1e-6, 0.999), st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_basic_inequality_property(r, s, t):
    z = cmath.rect(r * s, t)
    # rect can overshoot r by an ulp
    assume(abs(z) <= r)
    assert check_basic_inequality(z, r).passed


def test_domain_point():
    with pytest.raises(ValueError):
        DomainPoint(-1j)
    assert DomainPoint(complex(0.5, math.sqrt(3) / 2)).in_domain()
    assert not DomainPoint(complex(0.2, 0.9)).in_domain()
    rng = random.Random(0)
    for _ in range(200):
        t = random_domain_point(rng)
        assert t.in_domain() and -0.5 <= t.tau.real <= 1.5


def test_verify_units_csv(tmp_path):
    out = tmp_path / "u.csv"
    rows = verify_units(20, 4, 50, 20, seed=2, csv_path=str(out))
    assert [r.name for r in rows] == ["pga", "pu", "llogz", "loglog"]
    assert all(r.passed for r in rows)
    lines = out.read_text().splitlines()
    assert lines[0] == "check,sample,lhs,bound,pass"
    assert len(lines) == 1 + 20 + 4 + 50 + 20
