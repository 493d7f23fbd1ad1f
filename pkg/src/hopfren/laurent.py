"""Exact truncated Laurent series in z over Q[t, v].

The regularization target algebra: series with a finite pole part whose
coefficients are bivariate polynomials in the flow symbol t and the frame
symbol v.  Plain rational series are the (t, v)-degree-zero case.  The
"window" of a series is (-pole_bound, trunc): powers below -pole_bound are
forbidden (arithmetic raises PoleOverflowError instead of silently widening
the pole), powers above trunc are unknown (trunc=None means the series is
exact, i.e. all higher coefficients are exactly zero).

Minimal subtraction R_ms keeps the strictly negative powers; it is an
idempotent weight-one Rota-Baxter operator, which is what drives every
factorization in the character layer.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .linear import coerce_rational

DEFAULT_POLE_BOUND = 16


class PoleOverflowError(ArithmeticError):
    """Pole order exceeded the configured window."""

    def __init__(self, pole_order, bound):
        super().__init__(f"pole order {pole_order} exceeds the configured bound {bound}")
        self.pole_order = pole_order
        self.bound = bound


class LimitError(ArithmeticError):
    """z -> 0 limit does not exist; carries the offending pole order."""

    def __init__(self, pole_order):
        super().__init__(f"limit does not exist: residual pole of order {pole_order}")
        self.pole_order = pole_order


class Poly:
    """Sparse polynomial in t and v over Q: {(t_power, v_power): coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            self.coeffs = {}
        elif isinstance(coeffs, (int, Fraction)):
            c = coerce_rational(coeffs)
            self.coeffs = {(0, 0): c} if c else {}
        else:
            self.coeffs = {k: v for k, v in dict(coeffs).items() if v}

    @classmethod
    def monomial(cls, i, j, c=1):
        c = coerce_rational(c)
        return cls({(i, j): c}) if c else cls()

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly(other)
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            c += acc.get(k, 0)
            if c:
                acc[k] = c
            else:
                acc.pop(k, None)
        out = Poly.__new__(Poly)
        out.coeffs = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.coeffs = {k: -c for k, c in self.coeffs.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = coerce_rational(other)
            out = Poly.__new__(Poly)
            out.coeffs = {} if not c else {k: c * v for k, v in self.coeffs.items()}
            return out
        acc = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                c = acc.get(k, 0) + c1 * c2
                if c:
                    acc[k] = c
                else:
                    acc.pop(k, None)
        out = Poly.__new__(Poly)
        out.coeffs = acc
        return out

    __rmul__ = __mul__

    def coeff(self, i, j) -> Fraction:
        return self.coeffs.get((i, j), Fraction(0))

    def is_constant(self):
        return all(k == (0, 0) for k in self.coeffs)

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.coeffs.get((0, 0), Fraction(0))

    def degree_t(self):
        return max((i for (i, _j) in self.coeffs), default=0)

    def truncate_t(self, order):
        return Poly({k: c for k, c in self.coeffs.items() if k[0] <= order})

    def subst_t_to_v(self):
        """t^i v^j -> v^(i+j)."""
        acc = {}
        for (i, j), c in self.coeffs.items():
            k = (0, i + j)
            acc[k] = acc.get(k, 0) + c
        return Poly(acc)

    def subst_t_to_t_plus_v(self):
        """t -> t + v by binomial expansion."""
        acc = {}
        for (i, j), c in self.coeffs.items():
            for k in range(i + 1):
                key = (k, i - k + j)
                acc[key] = acc.get(key, 0) + c * math.comb(i, k)
        return Poly(acc)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs):
            c = self.coeffs[(i, j)]
            syms = []
            if i:
                syms.append("t" if i == 1 else f"t^{i}")
            if j:
                syms.append("v" if j == 1 else f"v^{j}")
            if not syms:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(syms))
            elif c == -1:
                parts.append("-" + "*".join(syms))
            else:
                parts.append(str(c) + "*" + "*".join(syms))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


P_ZERO = Poly()
P_ONE = Poly(1)
P_T = Poly.monomial(1, 0)
P_V = Poly.monomial(0, 1)


def _coerce_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly(x)
    raise TypeError(f"cannot use {type(x).__name__} as a series coefficient")


class LaurentSeries:
    """Truncated exact Laurent series sum_k c_k z^k with c_k in Q[t, v]."""

    __slots__ = ("coeffs", "pole_bound", "trunc")

    def __init__(self, coeffs=None, pole_bound=DEFAULT_POLE_BOUND, trunc=None):
        acc = {}
        if coeffs:
            for k, c in dict(coeffs).items():
                c = _coerce_poly(c)
                if c:
                    acc[int(k)] = c
        if trunc is not None:
            acc = {k: c for k, c in acc.items() if k <= trunc}
        self.coeffs = acc
        self.pole_bound = pole_bound
        self.trunc = trunc
        if acc:
            low = min(acc)
            if low < -pole_bound:
                raise PoleOverflowError(-low, pole_bound)

    @classmethod
    def constant(cls, c, pole_bound=DEFAULT_POLE_BOUND):
        return cls({0: _coerce_poly(c)}, pole_bound=pole_bound)

    @classmethod
    def z_pow(cls, k, c=1, pole_bound=DEFAULT_POLE_BOUND):
        return cls({k: _coerce_poly(c)}, pole_bound=pole_bound)

    def valuation(self):
        """Lowest power with a nonzero coefficient; +inf for the zero series."""
        return min(self.coeffs) if self.coeffs else math.inf

    def pole_order(self):
        v = self.valuation()
        return -v if v is not math.inf and v < 0 else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = LaurentSeries.constant(other, pole_bound=self.pole_bound)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        # compare on the common reliable window; the truncation mark itself
        # is bookkeeping, not part of the value
        cut = _min_trunc(self.trunc, other.trunc)
        a = self.coeffs if cut is None else {k: c for k, c in self.coeffs.items() if k <= cut}
        b = other.coeffs if cut is None else {k: c for k, c in other.coeffs.items() if k <= cut}
        return a == b

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def _wrap(self, coeffs, pole_bound, trunc):
        out = LaurentSeries.__new__(LaurentSeries)
        if trunc is not None:
            coeffs = {k: c for k, c in coeffs.items() if k <= trunc}
        out.coeffs = coeffs
        out.pole_bound = pole_bound
        out.trunc = trunc
        if coeffs:
            low = min(coeffs)
            if low < -pole_bound:
                raise PoleOverflowError(-low, pole_bound)
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = LaurentSeries.constant(other, pole_bound=self.pole_bound)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            c = acc.get(k, P_ZERO) + c
            if c:
                acc[k] = c
            else:
                acc.pop(k, None)
        return self._wrap(acc, min(self.pole_bound, other.pole_bound),
                          _min_trunc(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.coeffs.items()},
                          self.pole_bound, self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = LaurentSeries.constant(other, pole_bound=self.pole_bound)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            c = _coerce_poly(other)
            if not c:
                return self._wrap({}, self.pole_bound, self.trunc)
            return self._wrap({k: v * c for k, v in self.coeffs.items()},
                              self.pole_bound, self.trunc)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        # the product is reliable only up to min(trunc_a + val_b, trunc_b + val_a)
        trunc = _min_trunc(
            None if self.trunc is None else _add_inf(self.trunc, other.valuation()),
            None if other.trunc is None else _add_inf(other.trunc, self.valuation()),
        )
        acc = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if trunc is not None and k > trunc:
                    continue
                c = acc.get(k, P_ZERO) + c1 * c2
                if c:
                    acc[k] = c
                else:
                    acc.pop(k, None)
        return self._wrap(acc, min(self.pole_bound, other.pole_bound), trunc)

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def coeff(self, k) -> Poly:
        return self.coeffs.get(k, P_ZERO)

    def truncate(self, max_pow):
        return self._wrap(dict(self.coeffs), self.pole_bound,
                          _min_trunc(self.trunc, max_pow))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            cs = str(c)
            wrapped = f"({cs})" if (" " in cs or not c.is_constant()) else cs
            if k == 0:
                parts.append(wrapped)
            elif k < 0:
                zs = "z" if k == -1 else f"z^{-k}"
                parts.append(f"{wrapped}/{zs}")
            else:
                zs = "z" if k == 1 else f"z^{k}"
                if c == P_ONE:
                    parts.append(zs)
                else:
                    parts.append(f"{wrapped}*{zs}")
        out = " + ".join(parts)
        if self.trunc is not None:
            out += f" + O(z^{self.trunc + 1})"
        return out

    __repr__ = __str__


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_inf(t, val):
    # trunc + valuation with the zero-series valuation = +inf meaning "exact"
    return None if val is math.inf else t + val


L_ZERO = LaurentSeries()
L_ONE = LaurentSeries.constant(1)


def coerce_series(x) -> LaurentSeries:
    if isinstance(x, LaurentSeries):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return LaurentSeries.constant(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent series")


def minimal_subtraction(a: LaurentSeries) -> LaurentSeries:
    """R_ms: keep exactly the strictly negative powers of z."""
    a = coerce_series(a)
    neg = {k: c for k, c in a.coeffs.items() if k < 0}
    # the pole part is always reliable once the series is known through z^-1
    trunc = None if (a.trunc is None or a.trunc >= -1) else a.trunc
    return LaurentSeries(neg, pole_bound=a.pole_bound, trunc=trunc)


def pole_free_part(a: LaurentSeries) -> LaurentSeries:
    """R-tilde = id - R_ms: the nonnegative-power part."""
    a = coerce_series(a)
    pos = {k: c for k, c in a.coeffs.items() if k >= 0}
    return LaurentSeries(pos, pole_bound=a.pole_bound, trunc=a.trunc)


def rota_baxter_check(R, samples) -> bool:
    """Verify the weight-one identity R(x)R(y) + R(xy) = R(R(x)y + xR(y))."""
    for x, y in samples:
        x = coerce_series(x)
        y = coerce_series(y)
        lhs = R(x) * R(y) + R(x * y)
        rhs = R(R(x) * y + x * R(y))
        if lhs != rhs:
            return False
    return True


def limit_at_zero(a: LaurentSeries) -> Poly:
    """The z -> 0 limit; defined only when the pole part vanishes exactly."""
    a = coerce_series(a)
    po = a.pole_order()
    if po:
        raise LimitError(po)
    return a.coeff(0)


def exp_t_poly(n, order) -> Poly:
    """exp(n*t) as a polynomial in t truncated at the given order."""
    acc = {}
    c = Fraction(1)
    for k in range(order + 1):
        if c:
            acc[(k, 0)] = c
        c = c * n / (k + 1)
    return Poly(acc)


def exp_tz_series(n, order, pole_bound=DEFAULT_POLE_BOUND) -> LaurentSeries:
    """exp(n*t*z) as a truncated series: sum_{k<=order} (n t)^k z^k / k!."""
    coeffs = {}
    c = Fraction(1)
    for k in range(order + 1):
        coeffs[k] = Poly.monomial(k, 0, c * n ** k)
        c /= k + 1
    return LaurentSeries(coeffs, pole_bound=pole_bound, trunc=order)
