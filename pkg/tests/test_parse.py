import pytest

from poisson_env.parse import ParseError, parse_poly, tokenize
from poisson_env.poly import VarTable

V = VarTable(("z1", "z2"))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("(z1 + 1)^2", "z1^2 + 2*z1 + 1"),
        ("-z1*-z2", "z1*z2"),
        ("2/4*z1", "1/2*z1"),
        ("z1^0", "1"),
        ("((z2))", "z2"),
        ("3 - 5", "-2"),
    ],
)
def test_grammar(text, expected):
    assert parse_poly(text, V) == parse_poly(expected, V)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("z1^-1", "exponent"),
        ("z9", "unknown variable"),
        ("z1 +", "unexpected"),
        ("1/0", "zero"),
        ("z1 z2", "unexpected"),
        ("(z1", "expected"),
        ("z1 $ 2", ""),
    ],
)
def test_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_poly(text, V)
    assert fragment in str(exc.value)


def test_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_poly("z1 + z9", V)
    assert exc.value.pos == 5


def test_tokenize_kinds():
    toks = tokenize("3/4*z1^2")
    assert [t.kind for t in toks] == ["num", "op", "name", "op", "num", "end"]
    assert toks[2].value == "z1"
