from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfren.laurent import (DEFAULT_POLE_BOUND, L_ONE, L_ZERO, LaurentSeries,
                             LimitError, P_ONE, P_T, P_V, Poly,
                             PoleOverflowError, coerce_series, exp_t_poly,
                             exp_tz_series, limit_at_zero, minimal_subtraction,
                             pole_free_part, rota_baxter_check)

from conftest import random_series


# -- bivariate coefficient polynomials ---------------------------------------

def test_poly_basic_arithmetic():
    p = Poly.monomial(1, 0, 2) + Poly.monomial(0, 0, 3)  # 2t + 3
    q = Poly.monomial(0, 1)                               # v
    assert (p * q).coeff(1, 1) == 2
    assert (p * q).coeff(0, 1) == 3
    assert p - p == Poly()
    assert not Poly()
    assert P_ONE.constant() == 1


def test_poly_substitutions():
    p = Poly.monomial(2, 0) + Poly.monomial(1, 0, 3)  # t^2 + 3t
    assert p.subst_t_to_v() == Poly.monomial(0, 2) + Poly.monomial(0, 1, 3)
    # t -> t+v binomially
    q = Poly.monomial(2, 0).subst_t_to_t_plus_v()
    assert q == (Poly.monomial(2, 0) + Poly.monomial(1, 1, 2)
                 + Poly.monomial(0, 2))


def test_poly_str():
    p = Poly.monomial(2, 1, 2) - Poly.monomial(0, 0, 1)
    s = str(p)
    assert "t^2" in s and "v" in s


def test_poly_truncate_t():
    p = Poly.monomial(3, 0) + Poly.monomial(1, 0)
    assert p.truncate_t(2) == Poly.monomial(1, 0)


# -- Laurent series ----------------------------------------------------------

def test_series_constructor_drops_zero_coeffs():
    s = LaurentSeries({0: Fraction(0), 1: Fraction(2)})
    assert list(s.coeffs) == [1]


def test_series_add_mul_valuation():
    a = LaurentSeries({-2: Fraction(1), 0: Fraction(1)})
    b = LaurentSeries({1: Fraction(3)})
    assert (a + b).valuation() == -2
    assert (a * b).valuation() == -1
    assert (a * b).coeff(-1).constant() == 3
    assert a.pole_order() == 2
    assert b.pole_order() == 0
    assert L_ZERO.valuation() > 10**6  # inf


def test_pole_bound_overflow():
    a = LaurentSeries({-1: Fraction(1)}, pole_bound=4)
    with pytest.raises(PoleOverflowError) as ei:
        _ = a * a * a * a * a
    assert ei.value.pole_order == 5


def test_truncation_propagation():
    """Products respect min(Ta + val_b, Tb + val_a)."""
    a = LaurentSeries({0: Fraction(1), 1: Fraction(1)}, trunc=1)
    b = LaurentSeries({2: Fraction(1)})
    c = a * b
    assert c.trunc == 3
    assert c.coeff(2).constant() == 1
    assert c.coeff(3).constant() == 1
    # addition keeps the tighter window
    d = a + LaurentSeries({0: Fraction(1)}, trunc=5)
    assert d.trunc == 1


def test_windowed_equality():
    a = LaurentSeries({0: Fraction(1), 5: Fraction(9)}, trunc=2)
    b = LaurentSeries({0: Fraction(1)}, trunc=2)
    assert a == b
    c = LaurentSeries({0: Fraction(1)})
    assert a == c  # compared on the common window


def test_minimal_subtraction_splits():
    a = LaurentSeries({-2: Fraction(1), -1: Fraction(2), 0: Fraction(3),
                       4: Fraction(5)})
    neg = minimal_subtraction(a)
    pos = pole_free_part(a)
    assert neg + pos == a
    assert neg.coeffs == {-2: P_ONE * 1, -1: P_ONE * 2} or set(neg.coeffs) == {-2, -1}
    assert set(pos.coeffs) == {0, 4}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_minimal_subtraction_weight_one_rota_baxter(s1, s2):
    """R(x)R(y) + R(xy) = R(R(x)y + xR(y)) on random series pairs."""
    import random
    x = random_series(random.Random(s1))
    y = random_series(random.Random(s2))
    assert rota_baxter_check(minimal_subtraction, [(x, y)])


def test_keep_z0_projector_is_not_rota_baxter():
    """pi_0 fails once opposite powers multiply back into z^0."""
    def keep_const(a):
        return LaurentSeries({0: a.coeff(0)}, pole_bound=a.pole_bound,
                             trunc=a.trunc)

    x = LaurentSeries({1: Fraction(1), -1: Fraction(1)})  # z + 1/z
    assert not rota_baxter_check(keep_const, [(x, x)])
    # but it does hold when no crossing happens
    y = LaurentSeries({0: Fraction(1), 1: Fraction(1)})
    assert rota_baxter_check(keep_const, [(y, y)])


def test_limit_at_zero():
    a = LaurentSeries({0: Poly.monomial(1, 0, 2), 3: P_ONE})
    assert limit_at_zero(a) == Poly.monomial(1, 0, 2)
    b = LaurentSeries({-1: P_ONE})
    with pytest.raises(LimitError) as ei:
        limit_at_zero(b)
    assert ei.value.pole_order == 1


def test_exp_series_helpers():
    # exp(nt) truncated: 1 + nt + n^2 t^2/2 + ...
    p = exp_t_poly(2, 2)
    assert p.coeff(0, 0) == 1
    assert p.coeff(1, 0) == 2
    assert p.coeff(2, 0) == 2
    s = exp_tz_series(1, 3)
    assert s.trunc == 3
    assert s.coeff(2) == Poly.monomial(2, 0, Fraction(1, 2))


def test_str_rendering_shapes():
    s = LaurentSeries({-2: P_ONE, 0: Fraction(3, 2),
                       1: Poly.monomial(1, 0, 2)})
    assert str(s) == "1/z^2 + 3/2 + (2*t)*z"
    assert str(L_ZERO) == "0"
    t = LaurentSeries({0: Fraction(1)}, trunc=3)
    assert str(t).endswith("O(z^4)")


def test_coerce_series():
    assert coerce_series(Fraction(2)) == LaurentSeries.constant(2)
    assert coerce_series(L_ONE) is L_ONE
    assert coerce_series(3) == LaurentSeries.constant(3)
