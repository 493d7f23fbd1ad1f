"""Sparse rational linear combinations over hashable basis keys.

Every algebra in this package (tree polynomials, word polynomials, tensor
squares) is a finite Q-linear combination of canonical basis elements.  This
module provides the one shared container; products are defined by the
subclasses since each algebra multiplies its basis differently.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def coerce_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"expected a rational coefficient, got {type(c).__name__}")


class Lin:
    """Immutable-by-convention sparse map {basis key: nonzero Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                c = coerce_rational(c)
                if not c:
                    continue
                c += acc.get(key, 0)
                if c:
                    acc[key] = c
                else:
                    acc.pop(key, None)
        self.terms = acc

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coerce_rational(coeff)})

    @classmethod
    def zero(cls):
        return cls()

    def coeff(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def items(self):
        return self.terms.items()

    def keys(self):
        return self.terms.keys()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Lin):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        acc = dict(self.terms)
        for key, c in other.terms.items():
            c += acc.get(key, 0)
            if c:
                acc[key] = c
            else:
                acc.pop(key, None)
        out = type(self).__new__(type(self))
        out.terms = acc
        return out

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = type(self).__new__(type(self))
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def scale(self, c):
        c = coerce_rational(c)
        out = type(self).__new__(type(self))
        out.terms = {} if not c else {k: c * v for k, v in self.terms.items()}
        return out

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def map_basis(self, fn):
        """Linear extension of a basis map.  fn(key) returns a key or a Lin."""
        out = type(self)()
        acc = out.terms
        for key, c in self.terms.items():
            img = fn(key)
            if isinstance(img, Lin):
                for k2, c2 in img.terms.items():
                    v = acc.get(k2, 0) + c * c2
                    if v:
                        acc[k2] = v
                    else:
                        acc.pop(k2, None)
            else:
                v = acc.get(img, 0) + c
                if v:
                    acc[img] = v
                else:
                    acc.pop(img, None)
        return out

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0)"
        body = " + ".join(f"{c}*{k!r}" for k, c in self.terms.items())
        return f"{type(self).__name__}({body})"
