"""Text round-trips and file formats.

The grammar contract is parse(str(x)) == x; str(parse(text)) may differ
from text because printing canonicalizes order.
"""

from fractions import Fraction

import pytest

from hopfren.laurent import LaurentSeries
from hopfren.parsing import (ParseError, laurent_pairs, parse_alphabet,
                             parse_character_text, parse_dse_spec_text,
                             parse_forest, parse_laurent, parse_poly,
                             parse_rational, parse_tree_poly, parse_word_poly)
from hopfren.trees import Alphabet, TreePoly, forests_of_weight

from conftest import random_series


def test_forest_round_trip_exhaustive(ab2):
    for w in range(1, 5):
        for f in forests_of_weight(ab2, w):
            assert parse_forest(str(f)) == f


def test_forest_canonicalizes():
    assert str(parse_forest("a[b a[a]] b")) == "b a[b a[a]]"
    assert parse_forest("a[b a]") == parse_forest("a[a b]")


def test_tree_poly_round_trip():
    x = parse_tree_poly("2*a[b] - 1/3*b + a a")
    assert parse_tree_poly(str(x)) == x
    want = (2 * TreePoly.basis(parse_forest("a[b]"))
            - Fraction(1, 3) * TreePoly.basis(parse_forest("b"))
            + TreePoly.basis(parse_forest("a a")))
    assert x == want


def test_word_poly_round_trip():
    for text in ["ab - 2*ba", "(1,2) + (2,1)", "a + 1/2*bb"]:
        x = parse_word_poly(text)
        assert parse_word_poly(str(x)) == x


def test_laurent_round_trip_and_pairs():
    s = parse_laurent("1/z^2 + 3/2 + 2*z + O(z^3)")
    assert str(s) == "1/z^2 + 3/2 + 2*z + O(z^3)"
    assert laurent_pairs(s) == [(-2, "1"), (0, "3/2"), (1, "2")]
    assert parse_laurent(str(s)).trunc == 2


def test_laurent_round_trip_random(rng):
    for _ in range(60):
        s = random_series(rng)
        assert parse_laurent(str(s)) == s


def test_scalar_parsers():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert str(parse_poly("1 + 2*t - t^2")) == "1 + 2*t - t^2"


def test_alphabet_decl():
    al = parse_alphabet("a:1, b:2")
    assert al.letters == ("a", "b")
    assert al.weight("b") == 2
    assert parse_alphabet("a, b") == Alphabet(["a", "b"])


@pytest.mark.parametrize("text,line,col", [
    ("1/z^2 + + 2", 1, 9),
    ("a[b", 1, 4),
])
def test_error_coordinates(text, line, col):
    parse = parse_laurent if "/" in text else parse_forest
    with pytest.raises(ParseError) as ei:
        parse(text)
    assert (ei.value.line, ei.value.col) == (line, col)


CHAR_TEXT = """# toy character
kind = character
degree 2
alphabet a:1
a = 1/z
a[a] = 1/z^2 + 1/2/z   # with a comment
"""


def test_character_text_headers_and_values():
    phi = parse_character_text(CHAR_TEXT)
    assert str(phi(parse_forest("a[a]"))) == "1/z^2 + 1/2/z"
    # multiplicative extension to forests comes for free
    assert str(phi(parse_forest("a a"))) == "1/z^2"
    # both `key value` and `key = value` header styles parse
    alt = CHAR_TEXT.replace("kind = character", "kind character")
    assert parse_character_text(alt)(parse_forest("a")) == phi(parse_forest("a"))


def test_character_text_infers_alphabet():
    phi = parse_character_text("kind character\ndegree 1\na = 1/z\n")
    assert phi.alphabet.letters == ("a",)


def test_character_header_errors():
    with pytest.raises(ParseError, match="unknown kind"):
        parse_character_text("kind = banana\ndegree 1\na = 1/z\n")
    with pytest.raises(ParseError, match="missing 'kind'"):
        parse_character_text("degree 1\na = 1/z\n")
    with pytest.raises(ParseError, match="missing 'degree'"):
        parse_character_text("kind character\na = 1/z\n")
    with pytest.raises(ParseError, match="single trees"):
        parse_character_text("kind character\ndegree 2\na a = 1/z\n")


def test_character_value_error_positions():
    bad_rhs = "kind character\ndegree 2\nalphabet a:1\na = 1/z +\n"
    with pytest.raises(ParseError) as ei:
        parse_character_text(bad_rhs)
    assert (ei.value.line, ei.value.col) == (4, 10)
    bad_lhs = "kind character\ndegree 2\nalphabet a:1\n  a[b = 1/z\n"
    with pytest.raises(ParseError) as ei:
        parse_character_text(bad_lhs)
    assert (ei.value.line, ei.value.col) == (4, 6)


def test_dse_spec_text():
    spec = parse_dse_spec_text("# two terms\n1 1 g\n2 1/2 h\n")
    assert spec.terms == ((1, Fraction(1), "g"), (2, Fraction(1, 2), "h"))
    with pytest.raises(ParseError, match="positive"):
        parse_dse_spec_text("0 1 g")
    with pytest.raises(ParseError, match="n omega label"):
        parse_dse_spec_text("1 1")
