import pytest
from hypothesis import given, strategies as st

from cartan_sieve.quadforms import (
    CLASS_NUMBER_ONE,
    DEFAULT_DISCRIMINANTS,
    DEFAULT_DPRIME,
    TABLE_DISCRIMINANTS,
    Discriminant,
    QuadForm,
    check_discriminant,
    class_number,
    discriminant_table,
    is_fundamental,
    reduced_forms,
)
from oracles import class_number_analytic, class_number_brute

negative_discriminants = st.integers(3, 20000).map(lambda n: -n).filter(lambda d: d % 4 in (0, 1))


def test_reduced_forms_small():
    assert [(f.a, f.b, f.c) for f in reduced_forms(-4)] == [(1, 0, 1)]
    assert [(f.a, f.b, f.c) for f in reduced_forms(-15)] == [(1, 1, 4), (2, 1, 2)]


def test_class_numbers_known():
    assert class_number(-87) == 6
    assert class_number(-12) == 1   # non-maximal order of conductor 2
    assert class_number(-23) == 3
    assert class_number(-163) == 1
    assert class_number(-4 * 163) == 3   # 2 * (1 - (-163|2)/2)


def test_invalid_discriminants():
    for d in (0, 5, -5, -6, 12):
        with pytest.raises(ValueError):
            check_discriminant(d)


@given(negative_discriminants)
def test_forms_are_reduced_and_primitive(d):
    for f in reduced_forms(d):
        assert f.discriminant == d
        assert f.is_reduced()
        assert f.tau().imag > 0


@given(negative_discriminants)
def test_class_number_matches_enumeration(d):
    assert class_number(d) == class_number_brute(d)


@given(negative_discriminants.filter(is_fundamental))
def test_class_number_matches_analytic_formula(d):
    assert class_number(d) == class_number_analytic(d)


@pytest.mark.parametrize("d, fundamental", [
    (-3, True), (-4, True), (-8, True), (-12, False), (-16, False),
    (-20, True), (-52, True), (-27, False), (-28, False), (-87, True),
])
def test_is_fundamental(d, fundamental):
    assert is_fundamental(d) is fundamental


def test_discriminant_type():
    d = Discriminant(-12)
    assert not d.is_fundamental
    assert d.class_number == 1
    assert d.conductor() == 2
    assert Discriminant(-87).conductor() == 1
    assert Discriminant(-4 * 9 * 7).conductor() == 6


def test_discriminant_table_matches_printed_lists():
    table = discriminant_table(4)
    for h in range(1, 5):
        assert sorted(table[h], reverse=True) == sorted(TABLE_DISCRIMINANTS[h], reverse=True)
    assert [len(table[h]) for h in range(1, 5)] == [9, 18, 16, 54]


def test_discriminant_table_rejects_bad_h():
    with pytest.raises(ValueError):
        discriminant_table(0)
    with pytest.raises(ValueError):
        discriminant_table(7)


def test_default_lists():
    assert len(DEFAULT_DISCRIMINANTS) == 98
    assert DEFAULT_DISCRIMINANTS[:9] == CLASS_NUMBER_ONE
    assert DEFAULT_DISCRIMINANTS[-1] == -87
    assert set(DEFAULT_DPRIME) <= set(DEFAULT_DISCRIMINANTS)
    assert all(is_fundamental(d) for d in DEFAULT_DISCRIMINANTS)


def test_quadform_ordering_is_total():
    assert QuadForm(1, 1, 6) < QuadForm(2, -1, 3)
