"""The universal singular frame and its exact coefficient calculus.

The frame is the double series over generator chains (k_1,...,k_n) with
rational coefficient 1/(k_1(k_1+k_2)...(k_1+...+k_n)), carried with the
markers v^(k_1+...+k_n) and z^(-n).  The same numbers arise as volumes of
weighted simplices and as values of the linear-extension functional on
decorated forests; the logarithm of that functional is supported on single
trees and expands the frame over the Hall basis.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .hall import HallSet
from .laurent import LaurentSeries, Poly
from .trees import Alphabet, Forest, RootedTree, TreePoly, hu_alphabet
from .words import WordPoly, ZERO_PAIRING, concat_product, pi_map


def simplex_integral(ks) -> Fraction:
    """Volume of 0 <= s_1 <= ... <= s_n <= 1 against prod s_i^(k_i - 1),
    integrated innermost-out by explicit polynomial antiderivatives."""
    ks = tuple(int(k) for k in ks)
    if any(k < 1 for k in ks):
        raise ValueError("exponents must be >= 1")
    # poly in the current upper limit, as {exponent: coefficient}
    poly = {0: Fraction(1)}
    for k in ks:
        shifted = {e + k - 1: c for e, c in poly.items()}
        poly = {e + 1: c / (e + 1) for e, c in shifted.items()}
    return sum(poly.values(), Fraction(0))


def chain_coefficient(ks) -> Fraction:
    """Closed form 1/(k_1 (k_1+k_2) ... (k_1+...+k_n))."""
    out = Fraction(1)
    run = 0
    for k in ks:
        run += int(k)
        out /= run
    return out


class FrameExpansion:
    """Chains up to a convolution order and weight, with coefficient and
    the v/z marker powers."""

    __slots__ = ("order", "max_weight", "terms")

    def __init__(self, order: int, max_weight: int, terms):
        self.order = order
        self.max_weight = max_weight
        self.terms = dict(terms)

    def coefficient(self, chain) -> Fraction:
        return self.terms[tuple(chain)]

    def marker(self, chain):
        """(v power, z power) carried by the chain's term."""
        chain = tuple(chain)
        return sum(chain), -len(chain)

    def chains(self):
        return sorted(self.terms, key=lambda c: (sum(c), len(c), c))

    def to_laurent(self, pole_bound=None) -> LaurentSeries:
        """Collapse the expansion into one series: each chain contributes
        coefficient * v^(sum k) * z^(-n)."""
        coeffs = {}
        for chain, c in self.terms.items():
            n = len(chain)
            p = coeffs.get(-n, Poly()) + Poly.monomial(0, sum(chain), c)
            coeffs[-n] = p
        kwargs = {} if pole_bound is None else {"pole_bound": pole_bound}
        return LaurentSeries(coeffs, trunc=0, **kwargs)

    def __str__(self):
        lines = []
        for chain in self.chains():
            c = self.terms[chain]
            vpow, zpow = self.marker(chain)
            body = ".".join(f"f{k}" for k in chain)
            lines.append(f"{body}: {c} * v^{vpow} * z^{zpow}")
        return "\n".join(lines)


def usf_expand(order: int, max_weight: int) -> FrameExpansion:
    """All chains with n <= order and total weight <= max_weight; the
    coefficient of a chain extends its parent's by one more antiderivative
    step, so the closed form is never assumed."""
    if order < 1 or max_weight < 1:
        raise ValueError("bounds must be positive")
    terms = {}
    # (chain, accumulated weight) -> coefficient; extend chains on the right
    frontier = {(): Fraction(1)}
    for _n in range(order):
        nxt = {}
        for chain, c in frontier.items():
            w = sum(chain)
            for k in range(1, max_weight - w + 1):
                cc = c / (w + k)
                nxt[chain + (k,)] = cc
                terms[chain + (k,)] = cc
        frontier = nxt
        if not frontier:
            break
    return FrameExpansion(order, max_weight, terms)


# ---------------------------------------------------------------------------
# The linear-extension functional and its exp/log calculus


def _letter_weight(alphabet: Alphabet, a) -> int:
    return alphabet.weights[a]


def alpha_word(w, alphabet: Alphabet) -> Fraction:
    """alpha on a word: the chain closed form over the letter weights,
    last letter outermost."""
    return chain_coefficient(_letter_weight(alphabet, a) for a in w)


def alpha_tree_recursive(x, alphabet: Alphabet) -> Fraction:
    """alpha on a forest by the nested-antiderivative route:
    F_t(x) = int_0^x s^(k-1) prod_children F_c(s) ds, value F_t(1),
    multiplicative over the trees of a forest."""
    if isinstance(x, RootedTree):
        return sum(_tree_poly(x, alphabet).values(), Fraction(0))
    if isinstance(x, Forest):
        out = Fraction(1)
        for t in x.trees:
            out *= alpha_tree_recursive(t, alphabet)
        return out
    raise TypeError(f"expected a tree or forest, not {type(x).__name__}")


def _tree_poly(t: RootedTree, alphabet: Alphabet):
    prod = {0: Fraction(1)}
    for c in t.children:
        cp = _tree_poly(c, alphabet)
        acc = {}
        for e1, c1 in prod.items():
            for e2, c2 in cp.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        prod = acc
    k = alphabet.weights[t.label]
    return {e + k: c / (e + k) for e, c in prod.items()}


class ForestFunctional:
    """Rational functional on forests generated by a word-indexed family:
    the value on a forest is the family summed over its linear extensions
    (roots last)."""

    __slots__ = ("alphabet", "word_rule", "_cache")

    def __init__(self, alphabet: Alphabet, word_rule):
        self.alphabet = alphabet
        self.word_rule = word_rule
        self._cache = {}

    def word_value(self, w) -> Fraction:
        w = tuple(w)
        got = self._cache.get(w)
        if got is None:
            got = Fraction(self.word_rule(w))
            self._cache[w] = got
        return got

    def on_words(self, x: WordPoly) -> Fraction:
        return sum((c * self.word_value(w) for w, c in x.items()),
                   Fraction(0))

    def value(self, x) -> Fraction:
        """Evaluate on Forest / RootedTree / TreePoly via linear extensions,
        or directly on a word / WordPoly."""
        if isinstance(x, tuple):
            return self.word_value(x)
        if isinstance(x, WordPoly):
            return self.on_words(x)
        if isinstance(x, (Forest, RootedTree, TreePoly)):
            return self.on_words(pi_map(x, ZERO_PAIRING))
        raise TypeError(f"cannot evaluate on {type(x).__name__}")

    def __call__(self, x):
        return self.value(x)


def usf_alpha(alphabet: Alphabet) -> ForestFunctional:
    return ForestFunctional(alphabet, lambda w: alpha_word(w, alphabet))


def functional_convolve(f: ForestFunctional, g: ForestFunctional) -> ForestFunctional:
    """(fg)_w = sum over splits w = uv of f_u g_v."""
    def rule(w):
        return sum((f.word_value(w[:i]) * g.word_value(w[i:])
                    for i in range(len(w) + 1)), Fraction(0))

    return ForestFunctional(f.alphabet, rule)


def _splittings(w, m):
    """Ordered splittings of w into m nonempty consecutive blocks."""
    if m == 1:
        yield (w,)
        return
    for i in range(1, len(w) - m + 2):
        for rest in _splittings(w[i:], m - 1):
            yield (w[:i],) + rest


def functional_exp(f: ForestFunctional) -> ForestFunctional:
    """exp f(w) = sum_{m <= |w|} 1/m! sum over block splittings of
    prod f(block); requires f(empty) = 0."""
    if f.word_value(()) != 0:
        raise ValueError("exp needs value 0 on the empty word")

    def rule(w):
        if not w:
            return Fraction(1)
        acc = Fraction(0)
        for m in range(1, len(w) + 1):
            part = Fraction(0)
            for blocks in _splittings(w, m):
                prod = Fraction(1)
                for b in blocks:
                    prod *= f.word_value(b)
                    if not prod:
                        break
                part += prod
            acc += part / factorial(m)
        return acc

    return ForestFunctional(f.alphabet, rule)


def functional_log(f: ForestFunctional) -> ForestFunctional:
    """log f(w) = sum_{m <= |w|} (-1)^(m+1)/m sum over block splittings of
    prod f(block); requires f(empty) = 1."""
    if f.word_value(()) != 1:
        raise ValueError("log needs value 1 on the empty word")

    def rule(w):
        if not w:
            return Fraction(0)
        acc = Fraction(0)
        for m in range(1, len(w) + 1):
            part = Fraction(0)
            for blocks in _splittings(w, m):
                prod = Fraction(1)
                for b in blocks:
                    prod *= f.word_value(b)
                    if not prod:
                        break
                part += prod
            acc += part * Fraction((-1) ** (m + 1), m)
        return acc

    return ForestFunctional(f.alphabet, rule)


def usf_beta(alphabet: Alphabet) -> ForestFunctional:
    return functional_log(usf_alpha(alphabet))


# ---------------------------------------------------------------------------
# Hall representation of the frame


def hall_lie_element(hs: HallSet, t: RootedTree) -> WordPoly:
    """The bracketing matching roots-last words: letters map to their word,
    composite trees to E(t2)E(t1) - E(t1)E(t2), the mirror of the Hall
    polynomial's bracket order."""
    t1, t2 = hs.standard_decomposition(t)
    if t2 is None:
        return WordPoly.word((t.label,))
    p1 = hall_lie_element(hs, t1)
    p2 = hall_lie_element(hs, t2)
    return concat_product(p2, p1) - concat_product(p1, p2)


def all_words_up_to_weight(alphabet: Alphabet, max_weight: int):
    """Every word of positive weight <= max_weight, shortest-first order."""
    out = []
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            base = alphabet.word_weight(w)
            for a in alphabet.letters:
                ww = base + alphabet.weights[a]
                if ww <= max_weight:
                    nw = w + (a,)
                    out.append(nw)
                    nxt.append(nw)
        frontier = nxt
    return out


def _truncate_weight(x: WordPoly, alphabet: Alphabet, max_weight: int) -> WordPoly:
    return WordPoly({w: c for w, c in x.items()
                     if alphabet.word_weight(w) <= max_weight})


def concat_exp(L: WordPoly, alphabet: Alphabet, max_weight: int) -> WordPoly:
    """exp of a weight >= 1 element in the concatenation algebra,
    truncated by total weight."""
    if L.coeff(()):
        raise ValueError("exp needs no constant term")
    out = WordPoly.one()
    power = WordPoly.one()
    for m in range(1, max_weight + 1):
        power = _truncate_weight(concat_product(power, L), alphabet, max_weight)
        if not power.terms:
            break
        out = out + power.scale(Fraction(1, factorial(m)))
    return out


def hall_representation_check(max_weight: int, alphabet: Alphabet = None):
    """Compare sum_w alpha_w w with exp(sum over Hall trees of
    beta(t) E(t)), both truncated by weight.  Returns (ok, lhs, rhs)."""
    if alphabet is None:
        alphabet = hu_alphabet(max_weight)
    lhs_terms = {(): Fraction(1)}
    for w in all_words_up_to_weight(alphabet, max_weight):
        lhs_terms[w] = alpha_word(w, alphabet)
    lhs = WordPoly(lhs_terms)

    hs = HallSet(alphabet, max_weight)
    beta = usf_beta(alphabet)
    L = WordPoly.zero()
    for t in hs.all_members():
        c = beta.value(t)
        if c:
            L = L + hall_lie_element(hs, t).scale(c)
    rhs = concat_exp(L, alphabet, max_weight)
    return lhs == rhs, lhs, rhs
