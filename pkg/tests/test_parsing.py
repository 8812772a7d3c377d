import pytest
from hypothesis import given, strategies as st

from dioph.parsing import ParseError, as_conic, as_diagonal, parse_equation, render_terms


def test_basic_parse():
    p = parse_equation("2x^2 - 3y^2 = 5")
    assert p.variables == ("x", "y")
    assert p.render() == "2x^2 - 3y^2 - 5 = 0"
    assert as_conic(p).coefficients == (2, 0, -3, 0, 0, -5)


def test_like_terms_and_sides():
    p = parse_equation("x^2 + xy + 2 = yx - 3x^2 + x")
    assert p.render() == "4x^2 - x + 2 = 0"
    assert p.variables == ("x",)


def test_variable_order():
    p = parse_equation("x2^2 + z^2 - x10^2 + x^2 = 1")
    assert p.variables == ("x", "z", "x2", "x10")
    assert as_diagonal(p).coeffs == (1, 1, 1, -1)
    assert as_diagonal(p).b == 1


@pytest.mark.parametrize(
    "text, kind",
    [
        ("x^3 = 1", "degree"),
        ("x^2 y = 1", "degree"),
        ("x^2 = 1 = 2", "duplicate-equals"),
        ("x^2 + 1", "missing-equals"),
        ("= x^2", "empty-side"),
        ("x^2 =", "empty-side"),
        ("x^2 + w = 1", "unknown-token"),
        ("x^2 + + y = 1", "unexpected-token"),
        ("x + y = 1", "no-quadratic-term"),
        ("x^2 - x^2 + y = 0", "no-quadratic-term"),
    ],
)
def test_errors(text, kind):
    with pytest.raises(ParseError) as e:
        parse_equation(text)
    assert e.value.kind == kind


def test_degree_message_names_token():
    with pytest.raises(ParseError, match=r"degree 3 at token `x\^3`"):
        parse_equation("x^3 = 1")


def test_non_diagonal_rejected():
    with pytest.raises(ValueError):
        as_diagonal(parse_equation("x^2 + yz + z^2 = 1"))
    with pytest.raises(ValueError):
        as_conic(parse_equation("x^2 + y^2 + z^2 = 1"))


monos = st.sampled_from([(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)])
terms = st.lists(st.tuples(st.integers(-30, 30), monos), min_size=1, max_size=8).filter(
    lambda ts: any(sum(m) == 2 and sum(c for c, mm in ts if mm == m) for _, m in ts)
)


@given(terms)
def test_parse_render_idempotent(ts):
    text = render_terms(["x", "y"], ts)
    once = parse_equation(text)
    assert parse_equation(once.render()) == once
    assert once.render() == parse_equation(once.render()).render()
