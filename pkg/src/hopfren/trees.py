"""Decorated rooted trees and forests with exact canonical forms.

Trees are immutable and canonical on construction: children are sorted by
(size, natural label order, recursive key), so two trees are isomorphic as
decorated rooted trees iff they are equal.  Forests are sorted multisets of
trees; the empty forest is the algebra unit.  Grading is by total decoration
weight, carried by the Alphabet (default weight 1 per letter reproduces the
vertex-count grading of the undecorated case).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .linear import Lin

_NAT_SPLIT = re.compile(r"(\d+)")


def natural_key(label: str):
    """Sort key treating digit runs numerically, so f2 < f10."""
    parts = _NAT_SPLIT.split(label)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts if p)


class Alphabet:
    """Ordered decoration letters with positive integer weights.

    The declaration order is the letter order used by word comparisons
    (Lyndon, Hall); earlier letters are smaller.
    """

    __slots__ = ("letters", "index", "weights", "_hash")

    def __init__(self, letters: Iterable[str], weights=None):
        self.letters = tuple(letters)
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("duplicate letters in alphabet")
        for a in self.letters:
            if not a or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", a):
                raise ValueError(f"bad letter name {a!r}")
        self.index = {a: i for i, a in enumerate(self.letters)}
        if weights is None:
            self.weights = {a: 1 for a in self.letters}
        elif isinstance(weights, dict):
            self.weights = {a: int(weights.get(a, 1)) for a in self.letters}
        else:
            ws = tuple(weights)
            if len(ws) != len(self.letters):
                raise ValueError("weights do not match letters")
            self.weights = {a: int(w) for a, w in zip(self.letters, ws)}
        if any(w < 1 for w in self.weights.values()):
            raise ValueError("letter weights must be positive")
        self._hash = hash((self.letters, tuple(self.weights[a] for a in self.letters)))

    def weight(self, letter: str) -> int:
        return self.weights[letter]

    def key(self, letter: str) -> int:
        return self.index[letter]

    def word_weight(self, word) -> int:
        return sum(self.weights[a] for a in word)

    def tree_weight(self, t) -> int:
        return _tree_weight(self, t)

    def forest_weight(self, f) -> int:
        return sum(_tree_weight(self, t) for t in f.trees)

    def __contains__(self, letter):
        return letter in self.index

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.letters == other.letters and self.weights == other.weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{a}:{self.weights[a]}" for a in self.letters)
        return f"Alphabet({body})"


def hu_alphabet(max_weight: int) -> Alphabet:
    """Letters f1..fn with weight(fk) = k, ordered fn < ... < f2 < f1.

    This is the ladder-generator ordering used by the universal singular
    frame: higher-weight letters come first (smaller).
    """
    ks = range(max_weight, 0, -1)
    return Alphabet([f"f{k}" for k in ks], [k for k in ks])


@lru_cache(maxsize=None)
def _tree_weight_cached(alphabet, key):
    # key is the canonical nested tuple; weight = own letter + children
    label, children = key[1], key[2]
    return alphabet.weights[label] + sum(_tree_weight_cached(alphabet, c) for c in children)


def _tree_weight(alphabet, t):
    return _tree_weight_cached(alphabet, t.key)


class RootedTree:
    """A decorated rooted tree; children canonically ordered."""

    __slots__ = ("label", "children", "size", "key", "_hash")

    def __init__(self, label: str, children: Iterable["RootedTree"] = ()):
        self.label = label
        kids = sorted(children, key=lambda c: c.key)
        self.children = tuple(kids)
        self.size = 1 + sum(c.size for c in kids)
        self.key = ((self.size, natural_key(label)), label, tuple(c.key for c in kids))
        self._hash = hash(self.key)

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def as_forest(self) -> "Forest":
        return Forest((self,))

    def child_forest(self) -> "Forest":
        return Forest(self.children)

    def vertex_labels(self):
        yield self.label
        for c in self.children:
            yield from c.vertex_labels()

    def __str__(self):
        if not self.children:
            return self.label
        return f"{self.label}[{' '.join(str(c) for c in self.children)}]"

    def __repr__(self):
        return str(self)


class Forest:
    """A sorted multiset of rooted trees; the empty forest is the unit."""

    __slots__ = ("trees", "size", "key", "_hash")

    def __init__(self, trees: Iterable[RootedTree] = ()):
        ts = sorted(trees, key=lambda t: t.key)
        self.trees = tuple(ts)
        self.size = sum(t.size for t in ts)
        self.key = tuple(t.key for t in ts)
        self._hash = hash(self.key)

    def __eq__(self, other):
        if not isinstance(other, Forest):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        if isinstance(other, RootedTree):
            other = other.as_forest()
        return Forest(self.trees + other.trees)

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def is_empty(self):
        return not self.trees

    def grouped(self):
        """Distinct trees with multiplicities, in canonical order."""
        out = []
        for t in self.trees:
            if out and out[-1][0] == t:
                out[-1][1] += 1
            else:
                out.append([t, 1])
        return [(t, m) for t, m in out]

    def __str__(self):
        if not self.trees:
            return "1"
        return " ".join(str(t) for t in self.trees)

    def __repr__(self):
        return str(self)


EMPTY_FOREST = Forest()


def leaf(label: str) -> RootedTree:
    return RootedTree(label)


def ladder(labels) -> RootedTree:
    """ladder(("a","b","c")) is the chain with root a, then b, then c."""
    labels = tuple(labels)
    if not labels:
        raise ValueError("a ladder needs at least one vertex")
    t = RootedTree(labels[-1])
    for a in reversed(labels[:-1]):
        t = RootedTree(a, (t,))
    return t


class TreePoly(Lin):
    """Q-linear combination of forests; product is forest concatenation."""

    @classmethod
    def one(cls):
        return cls.basis(EMPTY_FOREST)

    @classmethod
    def tree(cls, t: RootedTree, coeff=1):
        return cls.basis(t.as_forest(), coeff)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TreePoly):
            return NotImplemented
        acc = {}
        for f1, c1 in self.terms.items():
            for f2, c2 in other.terms.items():
                f = Forest(f1.trees + f2.trees)
                c = acc.get(f, 0) + c1 * c2
                if c:
                    acc[f] = c
                else:
                    acc.pop(f, None)
        out = TreePoly.__new__(TreePoly)
        out.terms = acc
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for f in sorted(self.terms, key=lambda f: f.key):
            c = self.terms[f]
            if f.is_empty():
                parts.append(str(c))
            elif c == 1:
                parts.append(str(f))
            elif c == -1:
                parts.append(f"-1*{f}")
            else:
                parts.append(f"{c}*{f}")
        return " + ".join(parts)


def b_plus(label: str, x):
    """Graft a forest onto a new root: the Hochschild one-cocycle B+.

    On a Forest or RootedTree returns a RootedTree; extends linearly on
    TreePoly (acting termwise on basis forests).
    """
    if isinstance(x, Forest):
        return RootedTree(label, x.trees)
    if isinstance(x, RootedTree):
        return RootedTree(label, (x,))
    if isinstance(x, TreePoly):
        return x.map_basis(lambda f: RootedTree(label, f.trees).as_forest())
    raise TypeError(f"cannot graft a {type(x).__name__}")


def graft(t: RootedTree, u) -> RootedTree:
    """t with the trees of u adjoined as extra children of the root."""
    if isinstance(u, RootedTree):
        u = u.as_forest()
    return RootedTree(t.label, t.children + u.trees)


def circ_power(t: RootedTree, r: int) -> RootedTree:
    """Right-nested graft power: t^(1) = t, t^(r) = graft(t, t^(r-1))."""
    if r < 1:
        raise ValueError("graft power needs r >= 1")
    out = t
    for _ in range(r - 1):
        out = graft(t, out)
    return out


@lru_cache(maxsize=None)
def _sym_tree(t: RootedTree) -> int:
    return _sym_forest(t.child_forest())


def _sym_forest(f: Forest) -> int:
    out = 1
    for t, m in f.grouped():
        st = _sym_tree(t)
        out *= st ** m
        for k in range(2, m + 1):
            out *= k
    return out


def symmetry_factor(x) -> int:
    """Order of the decorated automorphism group of a tree or forest."""
    if isinstance(x, RootedTree):
        return _sym_tree(x)
    if isinstance(x, Forest):
        return _sym_forest(x)
    raise TypeError(f"no symmetry factor for {type(x).__name__}")


def _cut_options(t: RootedTree, path):
    """All admissible edge selections in the subtree at `path`.

    Returns (edges, crown trees, remaining subtree) triples, including the
    empty selection.  Edges are named by the path of canonical child indexes
    leading to the severed child.
    """
    per_child = []
    for i, c in enumerate(t.children):
        cpath = path + (i,)
        opts = [(frozenset((cpath,)), (c,), None)]
        opts.extend(_cut_options(c, cpath))
        per_child.append(opts)
    results = [(frozenset(), (), ())]
    for opts in per_child:
        nxt = []
        for e0, cr0, kept in results:
            for e1, cr1, rem in opts:
                nxt.append((e0 | e1, cr0 + cr1,
                            kept if rem is None else kept + (rem,)))
        results = nxt
    return [(e, cr, RootedTree(t.label, kept)) for e, cr, kept in results]


def admissible_cuts(t: RootedTree):
    """Nonempty admissible cuts of t as (edges, crown Forest, trunk tree).

    An admissible cut severs a set of edges no two of which lie on one
    root-to-leaf path; the crown collects the severed subtrees, the trunk is
    the component containing the root.
    """
    return [(edges, Forest(crown), trunk)
            for edges, crown, trunk in _cut_options(t, ())
            if edges]


@lru_cache(maxsize=None)
def _trees_by_weight(alphabet: Alphabet, max_weight: int):
    by_w = {w: [] for w in range(1, max_weight + 1)}
    for n in range(1, max_weight + 1):
        seen = []
        for a in alphabet.letters:
            m = n - alphabet.weights[a]
            if m < 0:
                continue
            if m == 0:
                seen.append(RootedTree(a))
                continue
            pool = [t for w in range(1, m + 1) for t in by_w[w]]
            for f in _forests_from_pool(pool, alphabet, m):
                seen.append(RootedTree(a, f))
        by_w[n] = sorted(set(seen), key=lambda t: t.key)
    return {w: tuple(ts) for w, ts in by_w.items()}


def _forests_from_pool(pool, alphabet, m):
    """Nonempty multisets from pool with total weight exactly m."""
    weights = [alphabet.tree_weight(t) for t in pool]

    def rec(target, start):
        if target == 0:
            yield ()
            return
        for i in range(start, len(pool)):
            w = weights[i]
            if w <= target:
                for rest in rec(target - w, i):
                    yield (pool[i],) + rest

    return rec(m, 0)


def enumerate_trees(alphabet: Alphabet, max_weight: int):
    """All decorated trees of weight <= max_weight, by weight then key."""
    by_w = _trees_by_weight(alphabet, max_weight)
    return [t for w in range(1, max_weight + 1) for t in by_w[w]]


def trees_of_weight(alphabet: Alphabet, weight: int):
    return list(_trees_by_weight(alphabet, weight)[weight])


@lru_cache(maxsize=None)
def _forests_by_weight(alphabet: Alphabet, max_weight: int):
    by_w = _trees_by_weight(alphabet, max_weight)
    pool = [t for w in range(1, max_weight + 1) for t in by_w[w]]
    out = {0: (EMPTY_FOREST,)}
    for m in range(1, max_weight + 1):
        out[m] = tuple(sorted((Forest(ts) for ts in _forests_from_pool(pool, alphabet, m)),
                              key=lambda f: f.key))
    return out


def enumerate_forests(alphabet: Alphabet, max_weight: int):
    """All forests of weight <= max_weight, including the empty forest."""
    by_w = _forests_by_weight(alphabet, max_weight)
    return [f for w in range(0, max_weight + 1) for f in by_w[w]]


def forests_of_weight(alphabet: Alphabet, weight: int):
    return list(_forests_by_weight(alphabet, weight)[weight])


def _shuffle_seqs(u, v):
    if not u:
        return [v]
    if not v:
        return [u]
    return [(u[0],) + rest for rest in _shuffle_seqs(u[1:], v)] \
        + [(v[0],) + rest for rest in _shuffle_seqs(u, v[1:])]


def linear_extension_words(x):
    """Label sequences enumerating vertices with every vertex after all of
    its descendants (roots come last).  Multiplicities are kept: the result
    is a list, one entry per linear extension of the forest poset.
    """
    if isinstance(x, RootedTree):
        return [w + (x.label,) for w in linear_extension_words(x.child_forest())]
    per_tree = [linear_extension_words(t) for t in x.trees]
    acc = [()]
    for words in per_tree:
        acc = [s for w0 in acc for w in words for s in _shuffle_seqs(w0, w)]
    return acc
