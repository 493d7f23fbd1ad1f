from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfren.words import (ADDITIVE_INT_PAIRING, Pairing, PairingError,
                           WordPoly, WordTensor, ZERO_PAIRING, compositions,
                           concat_product, contract_blocks, deconcat,
                           deconcat_reduced, hoffman_exp, hoffman_log,
                           hu_pairing, lyndon_factorize, lyndon_words, pi_map,
                           qsh_product, unshuffle_reduced, word_antipode,
                           word_counit, zhao_dual)

words2 = st.lists(st.sampled_from("ab"), max_size=4).map(tuple)


def wp(w, c=1):
    return WordPoly.basis(tuple(w), c)


# -- quasi-shuffle core -------------------------------------------------------

def test_shuffle_of_single_letters():
    out = qsh_product(wp("a"), wp("b"))
    assert out == wp("ab") + wp("ba")


def test_additive_pairing_quasi_shuffle():
    m1 = WordPoly.basis((1,))
    out = qsh_product(m1, m1, ADDITIVE_INT_PAIRING)
    assert out == WordPoly.basis((1, 1), 2) + WordPoly.basis((2,))


def test_qsym_product_with_longer_composition():
    # M_(1) * M_(2) = M_(1,2) + M_(2,1) + M_(3)
    out = qsh_product(WordPoly.basis((1,)), WordPoly.basis((2,)),
                      ADDITIVE_INT_PAIRING)
    assert out == (WordPoly.basis((1, 2)) + WordPoly.basis((2, 1))
                   + WordPoly.basis((3,)))


@settings(max_examples=40, deadline=None)
@given(words2, words2)
def test_shuffle_is_commutative(u, v):
    assert qsh_product(wp(u), wp(v)) == qsh_product(wp(v), wp(u))


@settings(max_examples=25, deadline=None)
@given(words2, words2, st.lists(st.sampled_from("ab"), max_size=3).map(tuple))
def test_shuffle_is_associative(u, v, w):
    a = qsh_product(qsh_product(wp(u), wp(v)), wp(w))
    b = qsh_product(wp(u), qsh_product(wp(v), wp(w)))
    assert a == b


def test_quasi_shuffle_associative_with_additive_pairing():
    ws = [(1,), (2,), (1, 1)]
    for u, v, w in product(ws, repeat=3):
        a = qsh_product(qsh_product(WordPoly.basis(u), WordPoly.basis(v),
                                    ADDITIVE_INT_PAIRING),
                        WordPoly.basis(w), ADDITIVE_INT_PAIRING)
        b = qsh_product(WordPoly.basis(u),
                        qsh_product(WordPoly.basis(v), WordPoly.basis(w),
                                    ADDITIVE_INT_PAIRING),
                        ADDITIVE_INT_PAIRING)
        assert a == b


def test_noncommutative_pairing_is_rejected():
    bad = Pairing(lambda x, y: x, name="left-project")
    with pytest.raises(PairingError):
        qsh_product(wp("a"), wp("b"), bad)


def test_concat_and_deconcat():
    assert concat_product(wp("ab"), wp("c")) == wp("abc")
    dc = deconcat(wp("ab"))
    assert dc.coeff(((), ("a", "b"))) == 1
    assert dc.coeff((("a",), ("b",))) == 1
    assert dc.coeff((("a", "b"), ())) == 1
    assert deconcat_reduced(wp("ab")).coeff((("a",), ("b",))) == 1
    assert word_counit(WordPoly.one()) == 1
    assert word_counit(wp("a")) == 0


def test_unshuffle_detects_lie_elements():
    lie = wp("ab") - wp("ba")
    assert unshuffle_reduced(lie) == WordTensor.zero()
    assert unshuffle_reduced(wp("ab")) != WordTensor.zero()


# -- antipode and Hoffman maps ------------------------------------------------

def test_word_antipode_shuffle():
    # S(w) = (-1)^n reverse(w) for the plain shuffle algebra
    assert word_antipode(wp("ab")) == wp("ba")
    assert word_antipode(wp("a")) == wp("a", -1)
    # antipode axiom: qsh(S(w1), w2) summed over deconcatenations = counit
    for w in [("a",), ("a", "b"), ("b", "a", "a")]:
        acc = WordPoly.zero()
        for (u, v), c in deconcat(WordPoly.basis(w)).items():
            acc = acc + qsh_product(word_antipode(WordPoly.basis(u, c)),
                                    WordPoly.basis(v))
        assert acc == WordPoly.zero(), w


def test_word_antipode_quasi_shuffle_instance():
    # S(M_(2)) = -M_(2) on a single letter; S(M_(1,1)) = M_(1,1)... with
    # the contraction term: S((1,1)) = (1,1) + (2) all signed
    s = word_antipode(WordPoly.basis((1, 1)), ADDITIVE_INT_PAIRING)
    assert s == WordPoly.basis((1, 1)) + WordPoly.basis((2,))


def test_hoffman_exp_log_are_inverse():
    for w in [(), (1,), (2,), (1, 2), (2, 1, 1)]:
        x = WordPoly.basis(w)
        assert hoffman_exp(hoffman_log(x, ADDITIVE_INT_PAIRING),
                           ADDITIVE_INT_PAIRING) == x
        assert hoffman_log(hoffman_exp(x, ADDITIVE_INT_PAIRING),
                           ADDITIVE_INT_PAIRING) == x


def test_hoffman_exp_values():
    # tau((1,1)) = (1,1) + (1/2)(2)
    e = hoffman_exp(WordPoly.basis((1, 1)), ADDITIVE_INT_PAIRING)
    assert e == WordPoly.basis((1, 1)) + WordPoly.basis((2,), Fraction(1, 2))
    # psi((1,1)) = (1,1) - (1/2)(2)
    l = hoffman_log(WordPoly.basis((1, 1)), ADDITIVE_INT_PAIRING)
    assert l == WordPoly.basis((1, 1)) + WordPoly.basis((2,), Fraction(-1, 2))


def test_hoffman_exp_is_shuffle_to_quasi_shuffle_homomorphism():
    ws = [(1,), (2,), (1, 1)]
    for u, v in product(ws, repeat=2):
        lhs = hoffman_exp(qsh_product(WordPoly.basis(u), WordPoly.basis(v),
                                      ZERO_PAIRING), ADDITIVE_INT_PAIRING)
        rhs = qsh_product(hoffman_exp(WordPoly.basis(u), ADDITIVE_INT_PAIRING),
                          hoffman_exp(WordPoly.basis(v), ADDITIVE_INT_PAIRING),
                          ADDITIVE_INT_PAIRING)
        assert lhs == rhs, (u, v)


# -- compositions, Lyndon -----------------------------------------------------

def test_compositions():
    assert compositions(3) == ((1, 1, 1), (1, 2), (2, 1), (3,))
    assert compositions(1) == ((1,),)


def test_lyndon_counts_and_membership():
    lw = lyndon_words(("a", "b"), 7)
    counts = [len([w for w in lw if len(w) == n]) for n in range(1, 8)]
    assert counts == [2, 1, 2, 3, 6, 9, 18]
    assert ("a", "b") in lw and ("b", "a") not in lw
    # every Lyndon word is strictly smaller than its proper suffixes
    for w in lw:
        for i in range(1, len(w)):
            assert w < w[i:], w


def test_lyndon_factorization():
    assert lyndon_factorize(("b", "a", "a", "b"), ("a", "b")) == \
        [("b",), ("a", "a", "b")]
    assert lyndon_factorize(("a", "b", "a"), ("a", "b")) == \
        [("a", "b"), ("a",)]
    # factors are weakly decreasing Lyndon words
    lw = set(lyndon_words(("a", "b"), 6))
    w = ("b", "a", "b", "a", "a")
    fac = lyndon_factorize(w, ("a", "b"))
    assert tuple(x for f in fac for x in f) == w
    assert all(f in lw for f in fac)
    assert all(fac[i] >= fac[i + 1] for i in range(len(fac) - 1))


# -- duals into QSym and the word image of trees ------------------------------

def test_zhao_dual_of_grafted_pair():
    from hopfren.parsing import parse_tree_poly
    out = zhao_dual(parse_tree_poly("a[a a]"))
    assert out == WordPoly.basis((1, 1, 1), 2) + WordPoly.basis((2, 1))


def test_zhao_dual_is_multiplicative_for_qsh():
    from hopfren.parsing import parse_tree_poly
    x = parse_tree_poly("a")
    y = parse_tree_poly("a[a]")
    lhs = zhao_dual(x * y)
    rhs = qsh_product(zhao_dual(x), zhao_dual(y), ADDITIVE_INT_PAIRING)
    assert lhs == rhs


def test_pi_map_appends_root_last():
    from hopfren.parsing import parse_tree_poly
    assert pi_map(parse_tree_poly("a[b]")) == wp("ba")
    # forest of two bullets: shuffle of the letters
    out = pi_map(parse_tree_poly("a b"))
    assert out == wp("ab") + wp("ba")


def test_pi_map_kills_the_defining_ideal():
    from hopfren.hall import ipi_generator
    gen = ipi_generator("a", "b")
    assert pi_map(gen) == WordPoly.zero()


def test_hu_pairing_adds_indices():
    pr = hu_pairing()
    assert pr.rule("f1", "f2") == "f3"
    out = qsh_product(wp(("f1",)), wp(("f1",)), pr)
    assert out == WordPoly.basis(("f1", "f1"), 2) + WordPoly.basis(("f2",))
