import pytest
from hypothesis import assume, given, strategies as st

from dioph.classify import PellEquation
from dioph.conic import GeneralConic
from dioph.nform import DiagonalForm
from dioph.oracle import BoundGuardExceeded, enumerate_solutions


def test_known_sets():
    assert enumerate_solutions(PellEquation(1, 4, 3), 10) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert len(enumerate_solutions(DiagonalForm((1, 1), 25), 10)) == 12
    assert enumerate_solutions(PellEquation(1, 12, 9), 200) == []


def test_guards():
    with pytest.raises(BoundGuardExceeded):
        enumerate_solutions(PellEquation(1, 2, 1), 10**6 + 1)
    with pytest.raises(BoundGuardExceeded):
        enumerate_solutions(DiagonalForm((1, 1, -1), 1), 1001)
    with pytest.raises(ValueError):
        enumerate_solutions(PellEquation(1, 2, 1), -1)
    with pytest.raises(TypeError):
        enumerate_solutions("x^2 = 1", 3)


c = st.integers(-4, 4)


@given(c, c, c, c, c, c)
def test_conic_enumeration_is_exact(A, B, C, D, E, F):
    assume((A, B, C) != (0, 0, 0))
    conic = GeneralConic(A, B, C, D, E, F)
    bound = 6
    naive = sorted((x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1) if conic(x, y) == 0)
    assert enumerate_solutions(conic, bound) == naive
