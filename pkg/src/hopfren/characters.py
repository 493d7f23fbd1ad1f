"""Convolution calculus on functionals from forests to Laurent series.

A Functional assigns a Laurent-series value to every forest up to a
truncation weight.  Characters are multiplicative and stored by tree
values; infinitesimal characters vanish on the unit and on proper
products; everything derived (convolutions, exponentials, Birkhoff parts)
is a "general" functional evaluated honestly from its defining formula,
so multiplicativity and locality stay testable theorems instead of baked-in
assumptions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .hopf import _coproduct_forest, aug_tensors
from .laurent import (LaurentSeries, LimitError, Poly, coerce_series,
                      exp_t_poly, exp_tz_series, limit_at_zero,
                      minimal_subtraction, pole_free_part)
from .linear import Lin
from .trees import EMPTY_FOREST, Alphabet, Forest, RootedTree, TreePoly

L_ONE = LaurentSeries.constant(1)
L_ZERO = LaurentSeries()


class TruncationError(ValueError):
    """Asked for a value beyond the functional's truncation weight."""


class NonLocalityError(ArithmeticError):
    """A pole survived the z -> 0 limit in the RG flow."""

    def __init__(self, forest, pole_order):
        super().__init__(
            f"non-local character: pole of order {pole_order} survives on {forest}")
        self.forest = forest
        self.pole_order = pole_order


class Functional:
    """A linear functional on forests, valued in Laurent series.

    kind "character": multiplicative, defined by tree values, 1 on the unit.
    kind "infinitesimal": derivation-like, tree values only, 0 elsewhere.
    kind "general": an arbitrary rule Forest -> LaurentSeries.
    """

    __slots__ = ("alphabet", "degree", "kind", "_tree_values", "_rule", "_cache")

    def __init__(self, alphabet: Alphabet, degree: int, kind: str,
                 tree_values=None, rule=None):
        if kind not in ("character", "infinitesimal", "general"):
            raise ValueError(f"unknown functional kind {kind!r}")
        self.alphabet = alphabet
        self.degree = degree
        self.kind = kind
        self._tree_values = {}
        if tree_values:
            for t, v in tree_values.items():
                if not isinstance(t, RootedTree):
                    raise TypeError("tree values must be keyed by trees")
                v = coerce_series(v)
                if v:
                    self._tree_values[t] = v
        self._rule = rule
        self._cache = {}

    @classmethod
    def character(cls, alphabet, degree, tree_values):
        return cls(alphabet, degree, "character", tree_values=tree_values)

    @classmethod
    def infinitesimal(cls, alphabet, degree, tree_values):
        return cls(alphabet, degree, "infinitesimal", tree_values=tree_values)

    @classmethod
    def general(cls, alphabet, degree, rule):
        return cls(alphabet, degree, "general", rule=rule)

    @classmethod
    def counit(cls, alphabet, degree):
        return cls(alphabet, degree, "character", tree_values={})

    def tree_value(self, t: RootedTree) -> LaurentSeries:
        return self._tree_values.get(t, L_ZERO)

    def value(self, x) -> LaurentSeries:
        if isinstance(x, RootedTree):
            x = x.as_forest()
        if isinstance(x, Forest):
            return self._forest_value(x)
        if isinstance(x, (TreePoly, Lin)):
            acc = L_ZERO
            for f, c in x.items():
                acc = acc + self._forest_value(f) * c
            return acc
        raise TypeError(f"cannot evaluate a functional on {type(x).__name__}")

    def __call__(self, x) -> LaurentSeries:
        return self.value(x)

    def _forest_value(self, f: Forest) -> LaurentSeries:
        got = self._cache.get(f)
        if got is not None:
            return got
        w = self.alphabet.forest_weight(f)
        if w > self.degree:
            raise TruncationError(
                f"forest of weight {w} exceeds truncation degree {self.degree}")
        if self.kind == "character":
            out = L_ONE
            for t in f.trees:
                out = out * self._tree_values.get(t, L_ZERO)
        elif self.kind == "infinitesimal":
            if len(f) == 1:
                out = self._tree_values.get(f.trees[0], L_ZERO)
            else:
                out = L_ZERO
        else:
            out = coerce_series(self._rule(f))
        self._cache[f] = out
        return out

    def __add__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        d = min(self.degree, other.degree)
        return Functional.general(self.alphabet, d,
                                  lambda f: self.value(f) + other.value(f))

    def __sub__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        d = min(self.degree, other.degree)
        return Functional.general(self.alphabet, d,
                                  lambda f: self.value(f) - other.value(f))

    def __neg__(self):
        return Functional.general(self.alphabet, self.degree,
                                  lambda f: -self.value(f))

    def scale(self, c):
        return Functional.general(self.alphabet, self.degree,
                                  lambda f: self.value(f) * c)

    def compose(self, op):
        """Post-compose with an operator on Laurent series, e.g. R_ms."""
        return Functional.general(self.alphabet, self.degree,
                                  lambda f: op(self.value(f)))

    def __repr__(self):
        return f"Functional(kind={self.kind}, degree={self.degree})"


def convolve(f: Functional, g: Functional) -> Functional:
    """(f*g)(x) = sum f(x') g(x'') over the coproduct."""
    d = min(f.degree, g.degree)

    def rule(forest):
        acc = L_ZERO
        for (u, v), c in _coproduct_forest(forest).items():
            fu = f.value(u)
            if not fu:
                continue
            gv = g.value(v)
            if not gv:
                continue
            acc = acc + fu * gv * c
        return acc

    return Functional.general(f.alphabet, d, rule)


def commutator(f: Functional, g: Functional) -> Functional:
    return convolve(f, g) - convolve(g, f)


def conv_power(f: Functional, k: int) -> Functional:
    if k < 0:
        raise ValueError("negative convolution power")
    out = Functional.counit(f.alphabet, f.degree)
    for _ in range(k):
        out = convolve(out, f)
    return out


def conv_inverse(f: Functional) -> Functional:
    """Inverse in the convolution group of functionals with f(1) = 1.

    Geometric series over augmentation tensors: on the augmentation ideal
    f^-1 = counit + sum_m (-1)^m m-fold products of f over Aug^(m).
    """
    if f.value(EMPTY_FOREST) != L_ONE:
        raise ValueError("convolution inverse needs value 1 on the empty forest")

    def rule(forest):
        if forest.is_empty():
            return L_ONE
        acc = L_ZERO
        for m in range(1, forest.size + 1):
            sign = -1 if m % 2 else 1
            for legs, c in aug_tensors(forest, m):
                prod = coerce_series(sign * c)
                for leg in legs:
                    prod = prod * f.value(leg)
                    if not prod:
                        break
                acc = acc + prod
        return acc

    return Functional.general(f.alphabet, f.degree, rule)


def exp_star(Z: Functional) -> Functional:
    """exp*(Z) = sum_k Z^{*k}/k!, finite on each forest by grading."""
    if Z.value(EMPTY_FOREST):
        raise ValueError("exp* needs value 0 on the empty forest")

    def rule(forest):
        if forest.is_empty():
            return L_ONE
        acc = L_ZERO
        fact = 1
        for m in range(1, forest.size + 1):
            fact *= m
            coeff = Fraction(1, fact)
            for legs, c in aug_tensors(forest, m):
                prod = coerce_series(coeff * c)
                for leg in legs:
                    prod = prod * Z.value(leg)
                    if not prod:
                        break
                acc = acc + prod
        return acc

    return Functional.general(Z.alphabet, Z.degree, rule)


def log_star(f: Functional) -> Functional:
    """log*(f) = sum_m (-1)^(m+1)/m (f - counit)^{*m}."""
    if f.value(EMPTY_FOREST) != L_ONE:
        raise ValueError("log* needs value 1 on the empty forest")

    def rule(forest):
        if forest.is_empty():
            return L_ZERO
        acc = L_ZERO
        for m in range(1, forest.size + 1):
            coeff = Fraction(1 if m % 2 else -1, m)
            for legs, c in aug_tensors(forest, m):
                prod = coerce_series(coeff * c)
                for leg in legs:
                    prod = prod * f.value(leg)
                    if not prod:
                        break
                acc = acc + prod
        return acc

    return Functional.general(f.alphabet, f.degree, rule)


def is_multiplicative(f: Functional, forests) -> bool:
    """Check f(uv) = f(u)f(v) over all pairs drawn from `forests`."""
    if f.value(EMPTY_FOREST) != L_ONE:
        return False
    pool = [g for g in forests if not g.is_empty()]
    for u in pool:
        fu = f.value(u)
        for v in pool:
            if f.alphabet.forest_weight(u) + f.alphabet.forest_weight(v) > f.degree:
                continue
            if f.value(Forest(u.trees + v.trees)) != fu * f.value(v):
                return False
    return True


def is_infinitesimal_on(f: Functional, forests) -> bool:
    """Check f kills the unit and every proper product forest."""
    if f.value(EMPTY_FOREST):
        return False
    return all(not f.value(g) for g in forests if len(g) >= 2)


def functionals_equal(f: Functional, g: Functional, forests) -> bool:
    return all(f.value(x) == g.value(x) for x in forests)


# ---------------------------------------------------------------------------
# Birkhoff factorization


class BirkhoffPair(NamedTuple):
    minus: Functional
    plus: Functional


def _bogoliubov(phi: Functional, R):
    """The preparation map rbar and the counterterm it defines, sharing one
    recursion: rbar(F) = phi(F) + sum minus(F') phi(F'') over the reduced
    coproduct, minus(F) = -R(rbar(F))."""

    def rbar_rule(forest):
        acc = phi.value(forest)
        for (u, v), c in _coproduct_forest(forest).items():
            if u.is_empty() or v.is_empty():
                continue
            mu = minus.value(u)
            if not mu:
                continue
            pv = phi.value(v)
            if not pv:
                continue
            acc = acc + mu * pv * c
        return acc

    bar = Functional.general(phi.alphabet, phi.degree, rbar_rule)

    def minus_rule(forest):
        if forest.is_empty():
            return L_ONE
        return -R(bar.value(forest))

    minus = Functional.general(phi.alphabet, phi.degree, minus_rule)
    return bar, minus


def bogoliubov_bar(phi: Functional, R=minimal_subtraction) -> Functional:
    return _bogoliubov(phi, R)[0]


def birkhoff_bogoliubov(phi: Functional, R=minimal_subtraction) -> BirkhoffPair:
    """Factor phi = minus^-1 * plus by the counterterm recursion.

    Both parts are evaluated forest by forest from the recursion itself, so
    their multiplicativity is a checkable consequence, not an input.
    """
    bar, minus = _bogoliubov(phi, R)

    def plus_rule(forest):
        if forest.is_empty():
            return L_ONE
        return bar.value(forest) + minus.value(forest)

    plus = Functional.general(phi.alphabet, phi.degree, plus_rule)
    return BirkhoffPair(minus, plus)


def birkhoff_bch(phi: Functional, R=minimal_subtraction,
                 Rt=pole_free_part, forests=None) -> BirkhoffPair:
    """Factor phi through the graded fixed point for the Lie generator.

    Solves chi degree by degree so that exp*(R chi) * exp*(Rt chi) = phi,
    then returns (exp*(-R chi), exp*(Rt chi)).
    """
    from .trees import enumerate_forests

    if forests is None:
        forests = enumerate_forests(phi.alphabet, phi.degree)
    Z = log_star(phi)
    chi_values = {}

    def chi_rule(forest):
        return chi_values.get(forest, L_ZERO)

    chi = Functional.general(phi.alphabet, phi.degree, chi_rule)
    by_weight = {}
    for f in forests:
        if not f.is_empty():
            by_weight.setdefault(phi.alphabet.forest_weight(f), []).append(f)
    for d in sorted(by_weight):
        lower = convolve(exp_star(chi.compose(R)), exp_star(chi.compose(Rt)))
        defect = log_star(lower)
        for f in by_weight[d]:
            val = Z.value(f) - defect.value(f)
            if val:
                chi_values[f] = val
        # chi changed: later degrees must not reuse stale caches
        chi._cache.clear()

    minus = exp_star(chi.compose(R).scale(-1))
    plus = exp_star(chi.compose(Rt))
    return BirkhoffPair(minus, plus)


# ---------------------------------------------------------------------------
# Grading flows, the renormalization group, beta


def grading_Y(f: Functional) -> Functional:
    """Multiply the value on a weight-n forest by n."""
    return Functional.general(
        f.alphabet, f.degree,
        lambda forest: f.value(forest) * f.alphabet.forest_weight(forest))


def theta_t(f: Functional, t_order=None) -> Functional:
    """Scale weight-n values by exp(n t), truncated at t_order."""
    order = f.degree if t_order is None else t_order

    def rule(forest):
        n = f.alphabet.forest_weight(forest)
        return f.value(forest) * exp_t_poly(n, order)

    return Functional.general(f.alphabet, f.degree, rule)


def theta_tz(f: Functional, z_order=None) -> Functional:
    """Scale weight-n values by exp(n t z) as a truncated series in z."""
    order = 2 * f.degree + 2 if z_order is None else z_order

    def rule(forest):
        n = f.alphabet.forest_weight(forest)
        return f.value(forest) * exp_tz_series(n, order)

    return Functional.general(f.alphabet, f.degree, rule)


def grading_flow(f: Functional, mode: str, t_order=None, z_order=None) -> Functional:
    if mode == "Y":
        return grading_Y(f)
    if mode == "theta_t":
        return theta_t(f, t_order)
    if mode == "theta_tz":
        return theta_tz(f, z_order)
    raise ValueError(f"unknown grading flow mode {mode!r}")


def rg_flow(phi: Functional, R=minimal_subtraction):
    """The renormalization group of a local character and its generator.

    F_t(x) = lim_{z->0} (minus * theta_tz(minus^-1))(x), a polynomial in t;
    beta = d F_t / dt at t = 0.  A surviving pole raises NonLocalityError
    naming the offending forest.
    """
    minus = birkhoff_bogoliubov(phi, R).minus
    loop = convolve(minus, theta_tz(conv_inverse(minus)))

    def ft_rule(forest):
        val = loop.value(forest)
        try:
            return LaurentSeries.constant(limit_at_zero(val),
                                          pole_bound=val.pole_bound)
        except LimitError as e:
            raise NonLocalityError(forest, e.pole_order) from None

    Ft = Functional.general(phi.alphabet, phi.degree, ft_rule)

    def beta_rule(forest):
        poly = Ft.value(forest).coeff(0)
        return LaurentSeries.constant(
            Poly({(0, 0): poly.coeff(1, 0)}))

    beta = Functional.general(phi.alphabet, phi.degree, beta_rule)
    return Ft, beta


def rg_substitute(Ft: Functional, which: str) -> Functional:
    """Rename the flow parameter inside F_t values: t -> v or t -> t + v."""
    if which == "v":
        sub = Poly.subst_t_to_v
    elif which == "t+v":
        sub = Poly.subst_t_to_t_plus_v
    else:
        raise ValueError("substitution must be 'v' or 't+v'")

    def rule(forest):
        val = Ft.value(forest)
        return LaurentSeries({k: sub(c) for k, c in val.coeffs.items()},
                             pole_bound=val.pole_bound, trunc=val.trunc)

    return Functional.general(Ft.alphabet, Ft.degree, rule)


def rg_one_parameter_check(Ft: Functional, forests) -> bool:
    """F_s * F_t = F_{s+t} as an exact two-symbol polynomial identity."""
    Fv = rg_substitute(Ft, "v")
    Ftv = rg_substitute(Ft, "t+v")
    return functionals_equal(convolve(Ft, Fv), Ftv, forests)


def scattering_beta(minus: Functional) -> Functional:
    """beta from the counterterm side: the z -> 0 limit of
    z * (minus * Y(minus^-1)); exact for locality-compatible counterterms."""
    conv = convolve(minus, grading_Y(conv_inverse(minus)))

    def rule(forest):
        val = conv.value(forest)
        shifted = LaurentSeries({k + 1: c for k, c in val.coeffs.items()},
                                pole_bound=val.pole_bound,
                                trunc=None if val.trunc is None else val.trunc + 1)
        try:
            return LaurentSeries.constant(limit_at_zero(shifted))
        except LimitError as e:
            raise NonLocalityError(forest, e.pole_order) from None

    return Functional.general(minus.alphabet, minus.degree, rule)


# ---------------------------------------------------------------------------
# Time-ordered counterterm exponential


@lru_cache(maxsize=None)
def infinite_simplex_integral(ks) -> Fraction:
    """Integral of prod exp(-k_i s_i) over 0 <= s_1 <= ... <= s_n < infinity.

    Integrating outward from s_n gives 1/(k_n (k_n + k_{n-1}) ... (k_1+...+k_n)).
    """
    out = Fraction(1)
    tail = 0
    for k in reversed(ks):
        tail += k
        out /= tail
    return out


def time_ordered_counterterm(beta: Functional, max_order=None) -> Functional:
    """The counterterm loop of a graded infinitesimal generator.

    Value on F: sum over n and Aug^(n)(F) of (-1)^n z^(-n) times the
    infinite simplex integral at (k_1..k_n), k_i the leg weights, times
    prod beta(leg_i).  With every k_i = 1 this collapses to exp*(-beta/z).
    """
    top = beta.degree if max_order is None else max_order

    def rule(forest):
        if forest.is_empty():
            return L_ONE
        acc = L_ZERO
        for n in range(1, min(forest.size, top) + 1):
            sign = -1 if n % 2 else 1
            for legs, c in aug_tensors(forest, n):
                coeff = coerce_series(c * sign)
                for leg in legs:
                    coeff = coeff * beta.value(leg)
                    if not coeff:
                        break
                if not coeff:
                    continue
                ks = tuple(beta.alphabet.forest_weight(leg) for leg in legs)
                weight = infinite_simplex_integral(ks)
                acc = acc + coeff * LaurentSeries.z_pow(-n, weight)
        return acc

    return Functional.general(beta.alphabet, beta.degree, rule)


# ---------------------------------------------------------------------------
# Randomized characters for oracle tests and the self test


def random_character(alphabet, degree, rng, pole=True, constant=True):
    """A character with small random rational values, pole order <= weight."""
    from .trees import enumerate_trees

    values = {}
    for t in enumerate_trees(alphabet, degree):
        w = alphabet.tree_weight(t)
        coeffs = {}
        if pole:
            for k in range(-w, 0):
                coeffs[k] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if constant:
            coeffs[0] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        values[t] = LaurentSeries(coeffs)
    return Functional.character(alphabet, degree, values)
