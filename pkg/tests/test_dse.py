import math
from fractions import Fraction

import pytest

from hopfren.dse import (DSESpec, ZetaValue, dse_word_solve, euler_expand,
                         foissy_criterion, phi_multiset, phi_paper,
                         predicted_left_legs, solve_dse, subalgebra_check,
                         tree_formula_solution, truncate_words, zeta_character)
from hopfren.parsing import parse_tree_poly
from hopfren.trees import TreePoly
from hopfren.words import WordPoly, qsh_product


def test_spec_validation():
    with pytest.raises(ValueError):
        DSESpec([])
    with pytest.raises(ValueError):
        DSESpec([(0, 1, "g")])
    with pytest.raises(ValueError):
        DSESpec([(1, 1, "g"), (1, 2, "h")])
    with pytest.raises(ValueError):
        DSESpec([(1, 1, "g"), (2, 1, "g")])
    spec = DSESpec([(2, Fraction(1, 3), "g")])
    assert spec.omega(2) == Fraction(1, 3)
    assert spec.label(2) == "g"


def test_single_cocycle_low_orders():
    spec = DSESpec([(1, 1, "g")])
    cs = solve_dse(spec, 3)
    assert cs[0] == TreePoly.one()
    assert cs[1] == parse_tree_poly("g")
    assert cs[2] == parse_tree_poly("2*g[g]")
    assert cs[3] == parse_tree_poly("g[g g] + 4*g[g[g]]")


def test_tree_formula_agrees_to_order_five():
    spec = DSESpec([(1, 1, "g")])
    cs = solve_dse(spec, 5)
    ts = tree_formula_solution(spec, 5)
    for n in range(6):
        assert cs[n] == ts[n], n


def test_tree_formula_agrees_with_other_weights():
    spec = DSESpec([(1, Fraction(1, 2), "g"), (2, Fraction(2), "h")])
    cs = solve_dse(spec, 4)
    ts = tree_formula_solution(spec, 4)
    for n in range(5):
        assert cs[n] == ts[n], n


def test_subalgebra_closure():
    spec = DSESpec([(1, 1, "g")])
    ok, witness = subalgebra_check(solve_dse(spec, 6))
    assert ok and witness is None
    # omega-independence: a different weight assignment still closes
    spec2 = DSESpec([(1, Fraction(3, 7), "g")])
    ok2, _ = subalgebra_check(solve_dse(spec2, 5))
    assert ok2
    spec3 = DSESpec([(1, 1, "g"), (2, Fraction(1, 2), "h")])
    ok3, _ = subalgebra_check(solve_dse(spec3, 5))
    assert ok3


def test_predicted_left_legs_shape():
    spec = DSESpec([(1, 1, "g")])
    cs = solve_dse(spec, 3)
    legs = predicted_left_legs(cs, 2)
    # P^2_k sums products c_{l_1}...c_{l_{k+1}} over |l| = 2-k
    assert legs[0] == cs[2]
    assert legs[1] == 2 * cs[1]
    assert legs[2] == TreePoly.one()


def test_foissy_criterion():
    # geometric P(h) = sum h^k has (k+1)p_{k+1} - k p_k = p_k at alpha=beta=1
    assert foissy_criterion([1, 1, 1, 1, 1], 1, 1, 4)
    assert not foissy_criterion([1, 1, 2, 1], 1, 1, 3)
    # exponential P(h) = sum h^k/k! solves the beta=0 case
    P = [Fraction(1, math.factorial(k)) for k in range(6)]
    assert foissy_criterion(P, 1, 0, 5)
    assert not foissy_criterion([2, 1], 1, 1, 1)


def test_word_solution_is_all_words():
    ws = dse_word_solve(("f1", "f2"), 3)
    for w, c in ws.items():
        assert c == 1
        assert len(w) <= 3
    assert ws.coeff(("f1", "f2", "f1")) == 1
    assert ws.coeff(()) == 1


def test_euler_expansion_matches_word_solution():
    for letters in (("f1",), ("f1", "f2"), ("f1", "f2", "f3")):
        assert euler_expand(letters, 4) == dse_word_solve(letters, 4)


def test_truncate_words():
    x = dse_word_solve(("a",), 4)
    t = truncate_words(x, 2)
    assert all(len(w) <= 2 for w, _ in t.items())


def test_zeta_normalizations_on_word():
    w = (2, 2, 3)
    # multiset: 2!1!/3! * (2*2*3)^-s ; paper: 1/3! * 12^-s at s=1
    assert phi_multiset(w, 1) == Fraction(2, 6) * Fraction(1, 12)
    assert phi_paper(w, 1) == Fraction(1, 6) * Fraction(1, 12)


def test_zeta_exact_truncated_product():
    z = zeta_character(2, [2, 3])
    assert z.exact == Fraction(3, 2)
    assert z.normalization == "multiset"
    assert z.decimal == "1.500000000000"
    # against the closed form p^s/(p^s-1) per prime
    z5 = zeta_character(2, [2, 3, 5])
    assert z5.exact == Fraction(4, 3) * Fraction(9, 8) * Fraction(25, 24)


def test_zeta_approaches_pi_squared_over_six():
    primes = [p for p in range(2, 2000)
              if all(p % q for q in range(2, int(p ** 0.5) + 1))]
    z = zeta_character(2, primes)
    assert abs(float(z.exact) - math.pi ** 2 / 6) < 1e-3


def test_zeta_trunc_len_bounds_the_dp():
    z = zeta_character(2, [2, 3], trunc_len=1)
    # only words of length <= 1: 1 + 1/4 + 1/9
    assert z.exact == 1 + Fraction(1, 4) + Fraction(1, 9)


def test_zeta_paper_normalization_reports_divergence():
    z = zeta_character(2, [2, 3], normalization="paper")
    assert z.exact is None
    # exp(1/4 + 1/9) to 12 places
    assert z.decimal.startswith("1.4349")
    z2 = zeta_character(2, [2, 3])
    assert z.decimal != z2.decimal
