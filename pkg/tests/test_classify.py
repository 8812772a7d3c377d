import pytest
from hypothesis import given, strategies as st

from dioph import oracle
from dioph.classify import (
    FiniteSquareDiscriminant,
    InfiniteFamilyCandidate,
    NoSolutionCongruence,
    NoSolutionDivisibility,
    PellEquation,
    check_certificate,
    classify,
    congruence_certificate,
    default_moduli,
    solvable_mod,
)


def test_classify_regimes():
    assert classify(PellEquation(2, 4, 3)) == NoSolutionDivisibility(2)
    assert classify(PellEquation(1, 4, 3)) == FiniteSquareDiscriminant(2)
    assert classify(PellEquation(2, 3, -5)) == InfiniteFamilyCandidate(6)


def test_invalid_equation():
    with pytest.raises(ValueError):
        PellEquation(0, 3, 1)
    with pytest.raises(ValueError):
        PellEquation(1, -3, 1)


def test_congruence_first_failing_modulus():
    eq = PellEquation(1, 12, 9)
    # 4 is the first listed modulus without roots: x^2 = 3 (mod 4) is impossible
    assert congruence_certificate(eq, [4, 8, 9, 12]) == 4
    assert congruence_certificate(eq, [9, 12]) == 12
    assert congruence_certificate(PellEquation(1, 3, -4), [3, 4, 5, 8]) is None
    assert congruence_certificate(PellEquation(2, 4, 3), [2]) == 2


def test_congruence_bad_moduli():
    with pytest.raises(ValueError):
        congruence_certificate(PellEquation(1, 2, 1), [])
    with pytest.raises(ValueError):
        congruence_certificate(PellEquation(1, 2, 1), [1])


def test_default_moduli_include_4ab():
    assert 48 in default_moduli(PellEquation(1, 12, 9))
    assert max(default_moduli(PellEquation(100, 101, 1))) == 16


small = st.integers(1, 12)


@given(small, small, st.integers(-40, 40))
def test_certificate_means_no_solutions(a, b, c):
    eq = PellEquation(a, b, c)
    m = congruence_certificate(eq, default_moduli(eq))
    if m is not None:
        assert check_certificate(eq, NoSolutionCongruence(m))
        assert oracle.enumerate_solutions(eq, 60) == []
    cls = classify(eq)
    assert check_certificate(eq, cls)


@given(small, small, st.integers(-40, 40), st.integers(2, 30))
def test_solvable_mod_matches_brute_force(a, b, c, m):
    brute = any((a * x * x - b * y * y + c) % m == 0 for x in range(m) for y in range(m))
    assert solvable_mod(a, b, c, m) == brute
