"""Hall sets of decorated rooted trees and their Lie polynomials.

A Hall tree is either a single decorated vertex or a graft
B+_a(t_1^(r_1) ... t_m^(r_m)) of right-nested power blocks of strictly
decreasing Hall trees, subject to two order conditions; the order is
alphabetical on foliage (the left-to-right leaf-then-root reading defined
below).  The foliage map sends the Hall set of trees bijectively onto the
Lyndon words, and the bracketing of a Hall tree yields a Lie polynomial in
the concatenation algebra.
"""

from __future__ import annotations

from .trees import Alphabet, Forest, RootedTree, TreePoly, circ_power, graft, leaf
from .words import WordPoly, ZERO_PAIRING, concat_product, pi_map


def tree_from_presentation(label, blocks) -> RootedTree:
    """B+_label of the forest of right-nested block powers."""
    return RootedTree(label, tuple(circ_power(t, r) for t, r in blocks))


class HallSet:
    """The Hall trees over an alphabet up to a weight bound.

    Members are produced degree by degree; each member carries a unique
    presentation (label, blocks) and its foliage word.  Construction raises
    if two members ever collide on foliage, which would break the order.
    """

    __slots__ = ("alphabet", "max_degree", "by_degree", "_presentation",
                 "_foliage", "_by_foliage", "_hp_cache")

    def __init__(self, alphabet: Alphabet, max_degree: int):
        self.alphabet = alphabet
        self.max_degree = max_degree
        self.by_degree = {}
        self._presentation = {}
        self._foliage = {}
        self._by_foliage = {}
        self._hp_cache = {}
        for d in range(1, max_degree + 1):
            self._build_degree(d)

    # -- order and bookkeeping

    def foliage(self, t: RootedTree):
        return self._foliage[t]

    def order_key(self, t: RootedTree):
        return tuple(self.alphabet.index[a] for a in self._foliage[t])

    def _foliage_key(self, word):
        return tuple(self.alphabet.index[a] for a in word)

    def is_member(self, t: RootedTree) -> bool:
        return t in self._presentation

    def presentation(self, t: RootedTree):
        return self._presentation[t]

    def members(self, degree: int):
        return self.by_degree.get(degree, ())

    def all_members(self):
        for d in range(1, self.max_degree + 1):
            yield from self.by_degree[d]

    def _admit(self, t, label, blocks, word):
        if t in self._presentation:
            other = self._presentation[t]
            raise AssertionError(
                f"tree {t} admits two Hall presentations: {other} and {(label, blocks)}")
        clash = self._by_foliage.get(word)
        if clash is not None and clash != t:
            raise AssertionError(
                f"foliage {word} is shared by {clash} and {t}; order would degenerate")
        self._presentation[t] = (label, blocks)
        self._foliage[t] = word
        self._by_foliage[word] = t

    # -- construction

    def _build_degree(self, d):
        fresh = []
        for a in self.alphabet.letters:
            if self.alphabet.weights[a] == d:
                t = leaf(a)
                self._admit(t, a, (), (a,))
                fresh.append(t)
        pool = [t for dd in range(1, d) for t in self.by_degree[dd]]
        pool.sort(key=self.order_key, reverse=True)
        pool_w = [self.alphabet.tree_weight(t) for t in pool]

        def block_choices(start, rem):
            if rem == 0:
                yield ()
                return
            for i in range(start, len(pool)):
                w = pool_w[i]
                if w > rem:
                    continue
                r = 1
                while r * w <= rem:
                    for rest in block_choices(i + 1, rem - r * w):
                        yield ((pool[i], r),) + rest
                    r += 1

        for a in self.alphabet.letters:
            rem = d - self.alphabet.weights[a]
            if rem < 1:
                continue
            for blocks in block_choices(0, rem):
                word = self._candidate_foliage(a, blocks)
                if not self._conditions_hold(a, blocks, word):
                    continue
                t = tree_from_presentation(a, blocks)
                self._admit(t, a, blocks, word)
                fresh.append(t)
        self.by_degree[d] = tuple(sorted(fresh, key=self.order_key))

    def _candidate_foliage(self, label, blocks):
        word = (label,)
        for t, r in blocks:
            word = word + self._foliage[t] * r
        return word

    def _conditions_hold(self, label, blocks, word) -> bool:
        # the reduced tree (last block dropped entirely) must itself be a
        # member, and the last block tree must exceed it; every block tree
        # must exceed the whole candidate
        t_last, _r = blocks[-1]
        reduced = tree_from_presentation(label, blocks[:-1])
        if reduced not in self._presentation:
            return False
        if self.order_key(t_last) <= self._foliage_key(self._foliage[reduced]):
            return False
        wkey = self._foliage_key(word)
        for t_j, _ in blocks:
            if self.order_key(t_j) <= wkey:
                return False
        return True

    # -- derived structure

    def standard_decomposition(self, t: RootedTree):
        """(t1, t2) with t = adjoin t2 to t1; letters return (t, None)."""
        label, blocks = self._presentation[t]
        if not blocks:
            return t, None
        t_last, r = blocks[-1]
        if r == 1:
            left_blocks = blocks[:-1]
        else:
            left_blocks = blocks[:-1] + ((t_last, r - 1),)
        t1 = tree_from_presentation(label, left_blocks)
        if t1 not in self._presentation:
            raise AssertionError(f"left factor {t1} of {t} is not a member")
        return t1, t_last

    def hall_polynomial(self, t: RootedTree) -> WordPoly:
        """Letters are their words; otherwise p(t) = p(t1)p(t2) - p(t2)p(t1)
        in the concatenation algebra."""
        return self._hall_poly_cached(t)

    def _hall_poly_cached(self, t):
        cache = self._hp_cache
        got = cache.get(t)
        if got is not None:
            return got
        t1, t2 = self.standard_decomposition(t)
        if t2 is None:
            out = WordPoly.word((t.label,))
        else:
            p1 = self._hall_poly_cached(t1)
            p2 = self._hall_poly_cached(t2)
            out = concat_product(p1, p2) - concat_product(p2, p1)
        cache[t] = out
        return out

    def audit(self):
        """Re-verify every member against the defining conditions.

        Returns (True, None) or (False, offending tree).
        """
        for d in range(1, self.max_degree + 1):
            for t in self.by_degree[d]:
                label, blocks = self._presentation[t]
                if not blocks:
                    if t != leaf(label) or self.alphabet.weights[label] != d:
                        return False, t
                    continue
                if tree_from_presentation(label, blocks) != t:
                    return False, t
                keys = [self.order_key(b) for b, _ in blocks]
                if any(keys[i] <= keys[i + 1] for i in range(len(keys) - 1)):
                    return False, t
                if self._candidate_foliage(label, blocks) != self._foliage[t]:
                    return False, t
                if not self._conditions_hold(label, blocks, self._foliage[t]):
                    return False, t
        return True, None

    def __repr__(self):
        counts = ", ".join(f"{d}:{len(self.by_degree[d])}"
                           for d in range(1, self.max_degree + 1))
        return f"HallSet({self.alphabet!r}, counts {counts})"


circ_graft = graft


def ipi_generator(a: str, b: str) -> TreePoly:
    """B+_a(leaf b) + B+_b(leaf a) - leaf a leaf b, a generator of the
    kernel ideal of the forest-to-word projection."""
    return (TreePoly.tree(RootedTree(a, (leaf(b),)))
            + TreePoly.tree(RootedTree(b, (leaf(a),)))
            - TreePoly.basis(Forest((leaf(a), leaf(b)))))


def reduce_mod_ipi(x) -> WordPoly:
    """Image in the shuffle algebra of words; the kernel is the ideal
    generated by the two-vertex symmetrizers."""
    return pi_map(x, ZERO_PAIRING)


def in_ideal(x) -> bool:
    return not reduce_mod_ipi(x).terms
