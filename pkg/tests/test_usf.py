"""Universal singular frame: chain coefficients, alpha/beta functionals,
and the Hall-basis representation of the frame."""

from fractions import Fraction

import pytest

from hopfren.trees import forests_of_weight, trees_of_weight
from hopfren.usf import (all_words_up_to_weight, alpha_tree_recursive,
                         alpha_word, chain_coefficient, functional_exp,
                         hall_representation_check, hu_alphabet,
                         simplex_integral, usf_alpha, usf_beta, usf_expand)


def _chains(total):
    """All compositions (k_1,...,k_n) with k_i >= 1 and sum <= total."""
    out = []
    def go(prefix, left):
        for k in range(1, left + 1):
            out.append(prefix + (k,))
            go(prefix + (k,), left - k)
    go((), total)
    return out


def test_chain_coefficient_spots():
    assert chain_coefficient((1,)) == 1
    assert chain_coefficient((2,)) == Fraction(1, 2)
    assert chain_coefficient((1, 1)) == Fraction(1, 2)
    assert chain_coefficient((1, 2)) == Fraction(1, 3)
    assert chain_coefficient((2, 1)) == Fraction(1, 6)
    assert chain_coefficient((1, 1, 1)) == Fraction(1, 6)


def test_three_routes_agree():
    # closed form, iterated-integral volume, and the tabulated expansion
    fe = usf_expand(6, 6)
    chains = _chains(6)
    assert sorted(chains) == sorted(fe.terms)
    for ks in chains:
        c = chain_coefficient(ks)
        assert simplex_integral(ks) == c
        assert fe.coefficient(ks) == c


def test_expansion_markers_and_order():
    fe = usf_expand(3, 3)
    assert fe.marker((1, 2)) == (3, -2)
    # chains sorted by weight, then length
    assert fe.chains()[0] == (1,)
    assert fe.chains()[-1] == (1, 1, 1)
    text = str(fe)
    assert "f1.f2: 1/3 * v^3 * z^-2" in text
    assert "f1.f1.f1: 1/6 * v^3 * z^-3" in text


def test_expansion_to_laurent():
    s = usf_expand(3, 3).to_laurent()
    assert str(s.coeff(-3)) == "1/6*v^3"
    assert str(s.coeff(-1)) == "v + 1/2*v^2 + 1/3*v^3"
    assert s.trunc == 0


def test_weight_cutoff_independent_of_order():
    # once order >= max_weight no chain is dropped
    assert usf_expand(4, 4).terms == usf_expand(9, 4).terms


def test_alpha_word_spots():
    ab = hu_alphabet(4)
    assert alpha_word(("f1",), ab) == 1
    assert alpha_word(("f1", "f2"), ab) == Fraction(1, 3)
    assert alpha_word(("f2", "f1"), ab) == Fraction(1, 6)
    assert alpha_word((), ab) == 1


def test_alpha_tree_matches_word_route():
    ab = hu_alphabet(4)
    alpha = usf_alpha(ab)
    for w in range(1, 5):
        for f in forests_of_weight(ab, w):
            assert alpha.value(f) == alpha_tree_recursive(f, ab)


def test_beta_spot_values():
    beta = usf_beta(hu_alphabet(3))
    want = {"f1": 1, "f2": Fraction(1, 2), "f3": Fraction(1, 3),
            "f1[f1]": 0, "f2[f1]": Fraction(1, 12),
            "f1[f2]": Fraction(-1, 12), "f1[f1 f1]": 0, "f1[f1[f1]]": 0}
    ab = hu_alphabet(3)
    seen = {}
    for w in range(1, 4):
        for t in trees_of_weight(ab, w):
            seen[str(t)] = beta.value(t)
    assert seen == want


def test_beta_vanishes_on_products():
    # log of a character is infinitesimal: proper forests go to zero
    ab = hu_alphabet(5)
    beta = usf_beta(ab)
    for w in range(2, 6):
        for f in forests_of_weight(ab, w):
            if len(f.trees) > 1:
                assert beta.value(f) == 0


def test_exp_of_beta_recovers_alpha():
    ab = hu_alphabet(4)
    alpha = usf_alpha(ab)
    again = functional_exp(usf_beta(ab))
    for w in all_words_up_to_weight(ab, 4):
        assert again.word_value(w) == alpha.word_value(w)


@pytest.mark.parametrize("weight", [2, 3, 4])
def test_hall_representation(weight):
    ok, lhs, rhs = hall_representation_check(weight)
    assert ok, f"frame != exp of Hall Lie element at weight {weight}"
    assert lhs == rhs
