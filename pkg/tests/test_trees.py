import pytest

from hopfren.trees import (EMPTY_FOREST, Alphabet, Forest, RootedTree,
                           TreePoly, admissible_cuts, b_plus, circ_power,
                           enumerate_forests, enumerate_trees, forests_of_weight,
                           graft, hu_alphabet, ladder, leaf,
                           linear_extension_words, symmetry_factor,
                           trees_of_weight)


def test_canonical_ordering_is_stable():
    # children sort canonically, so construction order cannot leak out
    t1 = RootedTree("a", (leaf("b"), leaf("c")))
    t2 = RootedTree("a", (leaf("c"), leaf("b")))
    assert t1 == t2
    assert str(t1) == str(t2)
    f1 = Forest((leaf("b"), t1))
    f2 = Forest((t2, leaf("b")))
    assert f1 == f2


def test_ladder_and_leaf():
    assert str(leaf("a")) == "a"
    assert str(ladder("aab")) == "a[a[b]]"
    assert ladder("a").size == 1
    assert ladder("aaaa").size == 4


def test_forest_multiplication_and_one():
    f = leaf("a").as_forest() * leaf("b").as_forest()
    assert len(f.trees) == 2
    assert str(EMPTY_FOREST) == "1"
    assert f * EMPTY_FOREST == f


def test_alphabet_weights_and_keys():
    A = Alphabet(["a", "b"], [1, 2])
    assert A.weight("b") == 2
    assert A.tree_weight(ladder("ab")) == 3
    assert A.forest_weight(Forest((leaf("b"), leaf("b")))) == 4
    with pytest.raises(ValueError):
        Alphabet(["a", "a"])


def test_hu_alphabet_order_puts_heavy_letters_first():
    hu = hu_alphabet(3)
    assert hu.letters == ("f3", "f2", "f1")
    assert [hu.weight(x) for x in hu.letters] == [3, 2, 1]
    # order: f3 < f2 < f1
    assert hu.key("f3") < hu.key("f1")


def test_enumeration_counts_match_known_series():
    A1 = Alphabet(["a"])
    assert [len(trees_of_weight(A1, n)) for n in range(1, 7)] == [1, 1, 2, 4, 9, 20]
    A2 = Alphabet(["a", "b"])
    assert [len(trees_of_weight(A2, n)) for n in range(1, 5)] == [2, 4, 14, 52]
    # forests are multisets of trees; weight-2 over one letter: {a a}, {a[a]}
    assert len(forests_of_weight(A1, 2)) == 2
    assert len(enumerate_forests(A1, 3)) == 1 + 1 + 2 + 4


def test_enumeration_respects_letter_weights():
    A = Alphabet(["a", "b"], [1, 2])
    # weight 2: b, a[a], a a
    assert len(trees_of_weight(A, 2)) == 2
    assert len(forests_of_weight(A, 2)) == 3


def test_symmetry_factors():
    assert symmetry_factor(leaf("a")) == 1
    two = b_plus("a", Forest((leaf("b"), leaf("b"))))
    assert symmetry_factor(two) == 2
    mixed = b_plus("a", Forest((leaf("b"), leaf("c"))))
    assert symmetry_factor(mixed) == 1
    # nested: B+(t t) with t = a[a] doubles again
    t = ladder("aa")
    nested = b_plus("a", Forest((t, t)))
    assert symmetry_factor(nested) == 2
    three = b_plus("a", Forest((leaf("b"), leaf("b"), leaf("b"))))
    assert symmetry_factor(three) == 6


def test_admissible_cuts_of_ladder():
    cuts = admissible_cuts(ladder("aaa"))
    shapes = sorted((str(crown), str(trunk)) for _e, crown, trunk in cuts)
    assert shapes == [("a", "a[a]"), ("a[a]", "a")]


def test_admissible_cuts_never_stack_along_a_path():
    # cherry with a stem: cutting both stem edge and leaf edge is inadmissible
    t = b_plus("a", ladder("ab"))  # a[a[b]]
    cuts = admissible_cuts(t)
    assert len(cuts) == 2
    t2 = b_plus("a", Forest((leaf("b"), leaf("b"))))
    # two single-leaf cuts plus the double cut
    assert len(admissible_cuts(t2)) == 3


def test_b_plus_and_graft_and_circ_power():
    assert str(b_plus("a", EMPTY_FOREST)) == "a"
    assert str(circ_power(leaf("a"), 3)) == "a[a[a]]"
    g = graft(leaf("a"), leaf("b"))
    assert str(g) == "a[b]"
    tp = b_plus("a", TreePoly.basis(leaf("b").as_forest(), 2))
    assert tp == TreePoly.basis(ladder("ab").as_forest(), 2)


def test_tree_poly_algebra():
    x = TreePoly.basis(leaf("a").as_forest())
    y = TreePoly.basis(leaf("b").as_forest())
    prod = x * y
    (forest, coeff), = prod.items()
    assert coeff == 1 and len(forest.trees) == 2
    assert x + x == 2 * x
    assert (x - x) == TreePoly.zero()
    assert str(TreePoly.one()) == "1"


def test_linear_extension_words_roots_last():
    # B+_a(b b): both leaves precede the root; multiplicity kept
    t = b_plus("a", Forest((leaf("b"), leaf("b"))))
    assert linear_extension_words(t) == [("b", "b", "a"), ("b", "b", "a")]
    l3 = ladder("abc")
    assert linear_extension_words(l3) == [("c", "b", "a")]
    # forest of two bullets: both interleavings
    f = Forest((leaf("a"), leaf("b")))
    ws = sorted(linear_extension_words(f))
    assert ws == [("a", "b"), ("b", "a")]
