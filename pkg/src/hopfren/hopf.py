"""Hopf algebra structure on decorated forests.

The coproduct severs trees along admissible cuts, crown on the left and
trunk on the right, and extends multiplicatively to forests.  The antipode
is computed by the cut recursion; the geometric-series form over
augmentation powers is kept as an independent oracle.  Augmentation tensor
expansions are shared: the character layer builds convolution exponentials
and logarithms directly from them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linear import Lin
from .trees import (EMPTY_FOREST, Forest, RootedTree, TreePoly,
                    admissible_cuts)


class TensorPoly(Lin):
    """Q-linear combination of forest pairs; product acts leg by leg."""

    @classmethod
    def pair(cls, left: Forest, right: Forest, coeff=1):
        return cls.basis((left, right), coeff)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TensorPoly):
            return NotImplemented
        acc = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (Forest(a1.trees + a2.trees), Forest(b1.trees + b2.trees))
                c = acc.get(k, 0) + c1 * c2
                if c:
                    acc[k] = c
                else:
                    acc.pop(k, None)
        out = TensorPoly.__new__(TensorPoly)
        out.terms = acc
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (k[0].key, k[1].key)):
            c = self.terms[(a, b)]
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{a} ⊗ {b}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def _coproduct_tree(t: RootedTree) -> TensorPoly:
    acc = {(t.as_forest(), EMPTY_FOREST): Fraction(1)}
    k = (EMPTY_FOREST, t.as_forest())
    acc[k] = acc.get(k, Fraction(0)) + 1
    for _edges, crown, trunk in admissible_cuts(t):
        k = (crown, trunk.as_forest())
        acc[k] = acc.get(k, Fraction(0)) + 1
    return TensorPoly(acc)


@lru_cache(maxsize=None)
def _coproduct_forest(f: Forest) -> TensorPoly:
    out = TensorPoly.pair(EMPTY_FOREST, EMPTY_FOREST)
    for t in f.trees:
        out = out * _coproduct_tree(t)
    return out


def coproduct(x) -> TensorPoly:
    """Delta(t) = t(x)1 + 1(x)t + sum over cuts crown(x)trunk, extended as
    an algebra map to forests and linearly to polynomials."""
    if isinstance(x, RootedTree):
        return _coproduct_tree(x)
    if isinstance(x, Forest):
        return _coproduct_forest(x)
    acc = TensorPoly.zero()
    for f, c in x.items():
        acc = acc + _coproduct_forest(f).scale(c)
    return acc


def counit(x) -> Fraction:
    """Coefficient of the empty forest."""
    if isinstance(x, (RootedTree, Forest)):
        x = TreePoly.basis(x.as_forest() if isinstance(x, RootedTree) else x)
    return x.coeff(EMPTY_FOREST)


@lru_cache(maxsize=None)
def _antipode_tree(t: RootedTree) -> TreePoly:
    acc = TreePoly.tree(t, -1)
    for _edges, crown, trunk in admissible_cuts(t):
        s_crown = _antipode_forest(crown)
        acc = acc - s_crown * TreePoly.tree(trunk)
    return acc


def _antipode_forest(f: Forest) -> TreePoly:
    out = TreePoly.one()
    for t in f.trees:
        out = out * _antipode_tree(t)
    return out


def antipode(x) -> TreePoly:
    """S(t) = -t - sum over cuts S(crown) trunk; algebra morphism."""
    if isinstance(x, RootedTree):
        return _antipode_tree(x)
    if isinstance(x, Forest):
        return _antipode_forest(x)
    acc = TreePoly.zero()
    for f, c in x.items():
        acc = acc + _antipode_forest(f).scale(c)
    return acc


@lru_cache(maxsize=None)
def _aug_tensors(f: Forest, m: int):
    """Aug^(m) on a basis forest: tuples of m nonempty forests with coeffs.

    Aug^(m) = (P (x) ... (x) P) Delta^(m-1) with P = id - unit*counit; the
    recursion peels the last leg off the coproduct.
    """
    if f.is_empty():
        return ()
    if m == 1:
        return (((f,), Fraction(1)),)
    acc = {}
    for (u, v), c in _coproduct_forest(f).items():
        if v.is_empty() or u.is_empty():
            continue
        for legs, c2 in _aug_tensors(u, m - 1):
            k = legs + (v,)
            val = acc.get(k, 0) + c * c2
            if val:
                acc[k] = val
            else:
                acc.pop(k, None)
    return tuple(acc.items())


def aug_tensors(f: Forest, m: int):
    """Aug^(m)(f) as a list of (m-tuple of nonempty forests, coefficient)."""
    if m < 1:
        raise ValueError("augmentation power needs m >= 1")
    return list(_aug_tensors(f, m))


def aug_power(x, m: int):
    """Aug^(m) of a TreePoly as {m-tuple of forests: coefficient}."""
    if isinstance(x, (RootedTree, Forest)):
        x = TreePoly.basis(x.as_forest() if isinstance(x, RootedTree) else x)
    acc = {}
    for f, c in x.items():
        for legs, c2 in _aug_tensors(f, m):
            val = acc.get(legs, 0) + c * c2
            if val:
                acc[legs] = val
            else:
                acc.pop(legs, None)
    return acc


def bidegree(x) -> int:
    """Largest m with Aug^(m)(x) nonzero; bounded by the vertex count.

    Defined on the augmentation ideal: a nonzero counit is an error.
    """
    if isinstance(x, (RootedTree, Forest)):
        x = TreePoly.basis(x.as_forest() if isinstance(x, RootedTree) else x)
    if x.coeff(EMPTY_FOREST):
        raise ValueError("bidegree is defined on the augmentation ideal only")
    top = max((f.size for f in x.keys()), default=0)
    out = 0
    for m in range(1, top + 1):
        if aug_power(x, m):
            out = m
    return out


def antipode_series(x) -> TreePoly:
    """Oracle antipode: S = sum_k (-1)^k m_k Aug^(k) on the augmentation
    ideal, extended by S(1) = 1."""
    if isinstance(x, (RootedTree, Forest)):
        x = TreePoly.basis(x.as_forest() if isinstance(x, RootedTree) else x)
    acc = {}
    eps = counit(x)
    if eps:
        acc[EMPTY_FOREST] = eps
    for f, c in x.items():
        if f.is_empty():
            continue
        for m in range(1, f.size + 1):
            sign = -1 if m % 2 else 1
            for legs, c2 in _aug_tensors(f, m):
                trees = ()
                for leg in legs:
                    trees += leg.trees
                prod = Forest(trees)
                val = acc.get(prod, 0) + sign * c * c2
                if val:
                    acc[prod] = val
                else:
                    acc.pop(prod, None)
    return TreePoly(acc)


def cocycle_check(L, basis):
    """Test the Hochschild one-cocycle law Delta L = L (x) 1 + (id (x) L) Delta.

    L maps a Forest to a TreePoly (bare trees and forests are accepted and
    wrapped); `basis` is an iterable of forests (the empty forest is included
    automatically).  Returns (ok, counterexample).
    """

    def apply(f):
        y = L(f)
        if isinstance(y, RootedTree):
            y = y.as_forest()
        if isinstance(y, Forest):
            y = TreePoly.one().map_basis(lambda _: y)
        return y

    todo = [EMPTY_FOREST]
    seen = {EMPTY_FOREST.key}
    for f in basis:
        if f.key not in seen:
            seen.add(f.key)
            todo.append(f)
    for f in todo:
        lf = apply(f)
        lhs = coproduct(lf)
        rhs = TensorPoly.zero()
        for g, c in lf.items():
            rhs = rhs + TensorPoly.pair(g, EMPTY_FOREST, c)
        for (u, v), c in _coproduct_forest(f).items():
            for g, c2 in apply(v).items():
                rhs = rhs + TensorPoly.pair(u, g, c * c2)
        if lhs != rhs:
            return False, f
    return True, None
