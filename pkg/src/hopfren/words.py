"""Shuffle and quasi-shuffle algebras on words, and the maps into them.

Words are tuples of letters; letters are strings for decorated alphabets
and positive integers for compositions (the quasi-symmetric instance).  A
Pairing is the optional contraction of two letters into one; the zero
pairing gives the plain shuffle.  Hoffman's exp/log change of basis, the
composition-sum antipode, Lyndon word machinery, Zhao's dual map on
undecorated trees and the linear-extension projection from decorated
forests complete the dictionary between trees and words.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linear import Lin
from .trees import Alphabet, Forest, RootedTree, TreePoly

EMPTY_WORD = ()


class PairingError(ValueError):
    """A pairing violated the Hoffman axioms on observed letters."""


class Pairing:
    """Commutative partial contraction on letters; None means zero.

    Commutativity is checked lazily on every evaluated pair; associativity
    and weight-additivity are the caller's promise (check() probes them on
    a finite letter set).
    """

    __slots__ = ("rule", "name", "_cache", "_qsh_cache")

    def __init__(self, rule=None, name="pairing"):
        self.rule = rule
        self.name = name
        self._cache = {}
        self._qsh_cache = {}

    def __call__(self, a, b):
        key = (a, b)
        if key in self._cache:
            return self._cache[key]
        if self.rule is None:
            out = None
        else:
            try:
                out = self.rule(a, b)
                back = self.rule(b, a)
            except PairingError:
                raise
            except Exception:
                raise PairingError(
                    f"{self.name} does not accept letters {a!r}, {b!r}") from None
            if out != back:
                raise PairingError(
                    f"{self.name} is not commutative on {a!r}, {b!r}")
        self._cache[key] = out
        self._cache[(b, a)] = out
        return out

    def check(self, letters, weight=None):
        """Probe the axioms on a finite letter set; raises PairingError."""
        for a in letters:
            for b in letters:
                ab = self(a, b)
                if ab is not None and weight is not None:
                    if weight(ab) != weight(a) + weight(b):
                        raise PairingError(
                            f"{self.name} is not weight-additive on {a!r}, {b!r}")
                for c in letters:
                    bc = self(b, c)
                    left = None if ab is None else self(ab, c)
                    right = None if bc is None else self(a, bc)
                    if left != right:
                        raise PairingError(
                            f"{self.name} is not associative on {a!r}, {b!r}, {c!r}")
        return True

    def __repr__(self):
        return f"Pairing({self.name})"


ZERO_PAIRING = Pairing(None, "zero")
ADDITIVE_INT_PAIRING = Pairing(lambda a, b: a + b, "integer addition")


def hu_pairing():
    """Contraction f_i, f_j -> f_{i+j} on ladder-generator letters."""
    def rule(a, b):
        return f"f{int(a[1:]) + int(b[1:])}"

    return Pairing(rule, "generator-index addition")


class WordPoly(Lin):
    """Sparse rational combination of words.  Products live in the module
    functions since each algebra structure needs its own pairing."""

    @classmethod
    def one(cls):
        return cls.basis(EMPTY_WORD)

    @classmethod
    def word(cls, w, coeff=1):
        return cls.basis(tuple(w), coeff)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), tuple(map(str, w)))):
            c = self.terms[w]
            body = render_word(w)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-1*{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)


class WordTensor(Lin):
    """Rational combination of word pairs (deconcatenation targets)."""

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (u, v) in sorted(self.terms):
            c = self.terms[(u, v)]
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{render_word(u)} ⊗ {render_word(v)}")
        return " + ".join(parts)


def render_word(w) -> str:
    if not w:
        return "1"
    if all(isinstance(a, int) for a in w):
        return "(" + ",".join(str(a) for a in w) + ")"
    return ".".join(str(a) for a in w)


def _as_word_poly(x) -> WordPoly:
    if isinstance(x, WordPoly):
        return x
    if isinstance(x, tuple):
        return WordPoly.basis(x)
    raise TypeError(f"expected a word or WordPoly, not {type(x).__name__}")


def _qsh_words(u, v, pairing: Pairing):
    cache = pairing._qsh_cache
    got = cache.get((u, v))
    if got is not None:
        return got
    if not u:
        out = {v: Fraction(1)}
    elif not v:
        out = {u: Fraction(1)}
    else:
        out = {}
        a, b = u[0], v[0]
        for w, c in _qsh_words(u[1:], v, pairing).items():
            k = (a,) + w
            out[k] = out.get(k, 0) + c
        for w, c in _qsh_words(u, v[1:], pairing).items():
            k = (b,) + w
            out[k] = out.get(k, 0) + c
        ab = pairing(a, b)
        if ab is not None:
            for w, c in _qsh_words(u[1:], v[1:], pairing).items():
                k = (ab,) + w
                out[k] = out.get(k, 0) + c
    cache[(u, v)] = out
    return out


def qsh_product(x, y, pairing: Pairing = ZERO_PAIRING) -> WordPoly:
    """(au) qsh (bv) = a(u qsh bv) + b(au qsh v) + <a,b>(u qsh v)."""
    x = _as_word_poly(x)
    y = _as_word_poly(y)
    acc = {}
    for u, cu in x.items():
        for v, cv in y.items():
            c = cu * cv
            for w, k in _qsh_words(u, v, pairing).items():
                val = acc.get(w, 0) + c * k
                if val:
                    acc[w] = val
                else:
                    acc.pop(w, None)
    return WordPoly(acc)


def concat_product(x, y) -> WordPoly:
    """Concatenation product, the noncommutative side of the story."""
    x = _as_word_poly(x)
    y = _as_word_poly(y)
    acc = {}
    for u, cu in x.items():
        for v, cv in y.items():
            w = u + v
            val = acc.get(w, 0) + cu * cv
            if val:
                acc[w] = val
            else:
                acc.pop(w, None)
    return WordPoly(acc)


def deconcat(x) -> WordTensor:
    """Deconcatenation coproduct: w -> sum of prefix (x) suffix."""
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        for i in range(len(w) + 1):
            k = (w[:i], w[i:])
            acc[k] = acc.get(k, 0) + c
    return WordTensor(acc)


def deconcat_reduced(x) -> WordTensor:
    """Deconcatenation with both legs nonempty."""
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        for i in range(1, len(w)):
            k = (w[:i], w[i:])
            acc[k] = acc.get(k, 0) + c
    return WordTensor(acc)


def unshuffle_reduced(x) -> WordTensor:
    """Subword coproduct with both legs nonempty.

    Splits each word over all proper subsets of positions, keeping letter
    order on both sides.  Vanishing characterizes Lie (primitive) elements
    of the concatenation Hopf algebra (Friedrichs criterion).
    """
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        n = len(w)
        for mask in range(1, (1 << n) - 1):
            left = tuple(w[i] for i in range(n) if mask >> i & 1)
            right = tuple(w[i] for i in range(n) if not mask >> i & 1)
            k = (left, right)
            val = acc.get(k, 0) + c
            if val:
                acc[k] = val
            else:
                del acc[k]
    return WordTensor(acc)


def word_counit(x) -> Fraction:
    return _as_word_poly(x).coeff(EMPTY_WORD)


@lru_cache(maxsize=None)
def compositions(n: int):
    """All tuples of positive integers with sum n."""
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return tuple(out)


def contract_blocks(comp, w, pairing: Pairing):
    """Fold each consecutive block of w through the pairing; None kills."""
    out = []
    pos = 0
    for size in comp:
        block = w[pos:pos + size]
        pos += size
        x = block[0]
        for a in block[1:]:
            x = pairing(x, a)
            if x is None:
                return None
        out.append(x)
    return tuple(out)


def word_antipode(x, pairing: Pairing = ZERO_PAIRING) -> WordPoly:
    """S(w) = (-1)^n sum over compositions of the contracted reversal."""
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        n = len(w)
        sign = -1 if n % 2 else 1
        rev = w[::-1]
        for comp in compositions(n):
            out = contract_blocks(comp, rev, pairing)
            if out is None:
                continue
            val = acc.get(out, 0) + sign * c
            if val:
                acc[out] = val
            else:
                acc.pop(out, None)
    return WordPoly(acc)


def hoffman_exp(x, pairing: Pairing) -> WordPoly:
    """tau(w) = sum over compositions I of (prod 1/i_j!) I<w>; maps the
    shuffle algebra isomorphically onto the quasi-shuffle algebra."""
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        for comp in compositions(len(w)):
            out = contract_blocks(comp, w, pairing)
            if out is None:
                continue
            coeff = c
            for size in comp:
                f = 1
                for i in range(2, size + 1):
                    f *= i
                coeff /= f
            val = acc.get(out, 0) + coeff
            if val:
                acc[out] = val
            else:
                acc.pop(out, None)
    return WordPoly(acc)


def hoffman_log(x, pairing: Pairing) -> WordPoly:
    """psi(w) = sum over I of (-1)^(n - len(I)) / (prod i_j) I<w>."""
    x = _as_word_poly(x)
    acc = {}
    for w, c in x.items():
        n = len(w)
        for comp in compositions(n):
            out = contract_blocks(comp, w, pairing)
            if out is None:
                continue
            coeff = c * Fraction(1 if (n - len(comp)) % 2 == 0 else -1)
            for size in comp:
                coeff /= size
            val = acc.get(out, 0) + coeff
            if val:
                acc[out] = val
            else:
                acc.pop(out, None)
    return WordPoly(acc)


# ---------------------------------------------------------------------------
# Lyndon machinery


def _letter_list(alphabet):
    if isinstance(alphabet, Alphabet):
        return alphabet.letters
    return tuple(alphabet)


def lyndon_words(alphabet, max_len: int):
    """All Lyndon words of length <= max_len, lexicographically ordered."""
    letters = _letter_list(alphabet)
    k = len(letters)
    out = []
    w = [0]
    while True:
        out.append(tuple(letters[i] for i in w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
        if not w:
            return out
        w[-1] += 1


def lyndon_factorize(word, alphabet):
    """Unique factorization into a nonincreasing product of Lyndon words."""
    letters = _letter_list(alphabet)
    index = {a: i for i, a in enumerate(letters)}
    for a in word:
        if a not in index:
            raise ValueError(f"letter {a!r} not in the alphabet")
    s = [index[a] for a in word]
    out = []
    i, n = 0, len(s)
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        step = j - k
        while i <= k:
            out.append(tuple(word[i:i + step]))
            i += step
    return out


# ---------------------------------------------------------------------------
# Trees to words


def zhao_dual(x) -> WordPoly:
    """Undecorated forests into compositions: the ladder goes to
    M_(1,...,1), grafting appends a part 1, products quasi-shuffle."""
    if isinstance(x, RootedTree):
        return _zhao_tree(x)
    if isinstance(x, Forest):
        return _zhao_forest(x)
    if isinstance(x, TreePoly):
        acc = WordPoly.zero()
        for f, c in x.items():
            acc = acc + _zhao_forest(f).scale(c)
        return acc
    raise TypeError(f"cannot map {type(x).__name__}")


@lru_cache(maxsize=None)
def _zhao_tree(t: RootedTree) -> WordPoly:
    inner = _zhao_forest(t.child_forest())
    return inner.map_basis(lambda comp: comp + (1,))


def _zhao_forest(f: Forest) -> WordPoly:
    out = WordPoly.one()
    for t in f.trees:
        out = qsh_product(out, _zhao_tree(t), ADDITIVE_INT_PAIRING)
    return out


def pi_map(x, pairing: Pairing = ZERO_PAIRING) -> WordPoly:
    """Decorated forests onto words: the root label lands on the right,
    forest products go to the (quasi-)shuffle.  With the zero pairing the
    image of a forest is its multiset of linear-extension words."""
    if isinstance(x, RootedTree):
        return _pi_tree(x, pairing)
    if isinstance(x, Forest):
        return _pi_forest(x, pairing)
    if isinstance(x, TreePoly):
        acc = WordPoly.zero()
        for f, c in x.items():
            acc = acc + _pi_forest(f, pairing).scale(c)
        return acc
    raise TypeError(f"cannot map {type(x).__name__}")


def _pi_tree(t: RootedTree, pairing: Pairing) -> WordPoly:
    inner = _pi_forest(t.child_forest(), pairing)
    return inner.map_basis(lambda w: w + (t.label,))


def _pi_forest(f: Forest, pairing: Pairing) -> WordPoly:
    out = WordPoly.one()
    for t in f.trees:
        out = qsh_product(out, _pi_tree(t, pairing), pairing)
    return out
