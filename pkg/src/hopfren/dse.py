"""Combinatorial fixed-point equations and their Hopf-subalgebra solutions.

A spec is a finite family of grafting terms (n, omega_n, label_n); the
solution series c_0, c_1, ... is computed by the degree recursion, checked
against the closed tree formula, and its coproduct against the predicted
left-leg polynomials.  The word-algebra instance (every word once) and the
zeta-style evaluations over prime-indexed letters are here too.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from math import factorial

from .hopf import TensorPoly, coproduct
from .trees import Alphabet, TreePoly, b_plus, symmetry_factor, trees_of_weight
from .words import WordPoly, ZERO_PAIRING, qsh_product


class DSESpec:
    """Terms (n, omega_n, label_n) of X = 1 + sum omega_n B+_n(X^(n+1)).

    Decoration weights are pinned to the term index so that the solution
    component c_n is homogeneous of weight n.
    """

    __slots__ = ("terms", "alphabet")

    def __init__(self, terms):
        terms = list(terms)
        if not terms:
            raise ValueError("a Dyson-Schwinger spec needs at least one term")
        seen = set()
        cleaned = []
        for n, omega, label in terms:
            n = int(n)
            if n < 1:
                raise ValueError("term indexes must be positive")
            if n in seen:
                raise ValueError(f"duplicate term index {n}")
            seen.add(n)
            cleaned.append((n, Fraction(omega), str(label)))
        cleaned.sort()
        self.terms = tuple(cleaned)
        labels = [lab for _n, _o, lab in cleaned]
        if len(set(labels)) != len(labels):
            raise ValueError("decoration labels must be distinct")
        self.alphabet = Alphabet(labels, [n for n, _o, _l in cleaned])

    def omega(self, n) -> Fraction:
        for m, o, _l in self.terms:
            if m == n:
                return o
        return Fraction(0)

    def label(self, n):
        for m, _o, lab in self.terms:
            if m == n:
                return lab
        return None


def _weak_compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def solve_dse(spec: DSESpec, N: int):
    """c_0..c_N by c_n = sum_m omega_m B+_m( sum_{|k|=n-m} c_k1 ... c_k(m+1) )."""
    cs = [TreePoly.one()]
    for n in range(1, N + 1):
        acc = TreePoly.zero()
        for m, omega, label in spec.terms:
            if m > n:
                continue
            inner = TreePoly.zero()
            for ks in _weak_compositions(n - m, m + 1):
                prod = TreePoly.one()
                for k in ks:
                    prod = prod * cs[k]
                inner = inner + prod
            acc = acc + b_plus(label, inner).scale(omega)
        cs.append(acc)
    return cs


def predicted_left_legs(cs, n: int):
    """P^n_k = sum over l_1+...+l_(k+1) = n-k of c_l1 ... c_l(k+1)."""
    out = {}
    for k in range(n + 1):
        acc = TreePoly.zero()
        for ls in _weak_compositions(n - k, k + 1):
            prod = TreePoly.one()
            for l in ls:
                prod = prod * cs[l]
            acc = acc + prod
        out[k] = acc
    return out


def subalgebra_check(cs):
    """Delta(c_n) = sum_k P^n_k (x) c_k for every computed degree.

    Returns (True, None) or (False, (n, offending TensorPoly difference)).
    """
    for n in range(1, len(cs)):
        actual = coproduct(cs[n])
        legs = predicted_left_legs(cs, n)
        want = TensorPoly.zero()
        for k in range(n + 1):
            for fl, cl in legs[k].items():
                for fr, cr in cs[k].items():
                    want = want + TensorPoly.pair(fl, fr, cl * cr)
        if actual != want:
            return False, (n, actual - want)
    return True, None


def tree_formula_solution(spec: DSESpec, N: int):
    """The closed-form solution: c_n = sum over weight-n trees of
    t / |sym(t)| times the product over vertices of
    omega_k (k+1)! / (k+1-fertility)!, k the decoration weight, and zero
    whenever the fertility exceeds k+1."""
    alphabet = spec.alphabet
    weight_of = {spec.label(n): n for n, _o, _l in spec.terms}

    def vertex_factor(t):
        k = weight_of[t.label]
        fert = len(t.children)
        if fert > k + 1:
            return Fraction(0)
        out = spec.omega(k) * Fraction(factorial(k + 1), factorial(k + 1 - fert))
        for c in t.children:
            out *= vertex_factor(c)
            if not out:
                break
        return out

    cs = [TreePoly.one()]
    for n in range(1, N + 1):
        acc = TreePoly.zero()
        for t in trees_of_weight(alphabet, n):
            rho = vertex_factor(t)
            if rho:
                acc = acc + TreePoly.tree(t, rho / symmetry_factor(t))
        cs.append(acc)
    return cs


def foissy_criterion(P, alpha, beta, order: int) -> bool:
    """Coefficientwise (1 - alpha beta h) P'(h) = alpha P(h) with P(0)=1."""
    P = [Fraction(p) for p in P]
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if not P or P[0] != 1:
        return False
    top = min(order, len(P) - 1)
    for k in range(top):
        lhs = (k + 1) * P[k + 1] - alpha * beta * k * P[k]
        if lhs != alpha * P[k]:
            return False
    return True


# ---------------------------------------------------------------------------
# The word-algebra instance: every word exactly once


def truncate_words(x: WordPoly, max_len: int) -> WordPoly:
    return WordPoly({w: c for w, c in x.items() if len(w) <= max_len})


def dse_word_solve(letters, max_len: int) -> WordPoly:
    """X = 1 + sum_p X p: every word over the letters, coefficient 1,
    the formal expansion marker being the word length."""
    letters = tuple(letters)
    acc = {(): Fraction(1)}
    layer = [()]
    for _ in range(max_len):
        layer = [w + (p,) for w in layer for p in letters]
        for w in layer:
            acc[w] = Fraction(1)
    return WordPoly(acc)


def euler_expand(letters, max_len: int) -> WordPoly:
    """Shuffle product over letters of the concatenation-geometric series
    sum_k p^k; agrees with dse_word_solve degree by degree."""
    letters = tuple(letters)
    out = WordPoly.one()
    for p in letters:
        geo = WordPoly({(p,) * k: Fraction(1) for k in range(max_len + 1)})
        out = truncate_words(qsh_product(out, geo, ZERO_PAIRING), max_len)
    return out


# ---------------------------------------------------------------------------
# Zeta-style evaluations over prime-indexed letters


def letter_value(letter) -> int:
    """Numeric index of a letter: ints pass through, 'f7' -> 7."""
    if isinstance(letter, int):
        return letter
    s = str(letter)
    digits = "".join(ch for ch in s if ch.isdigit())
    if not digits:
        raise ValueError(f"letter {letter!r} carries no numeric index")
    return int(digits)


def phi_paper(w, s: int) -> Fraction:
    """The literal normalization: pr(w)^(-s) / |w|!."""
    pr = 1
    for a in w:
        pr *= letter_value(a)
    return Fraction(1, pr ** s * factorial(len(w)))


def phi_multiset(w, s: int) -> Fraction:
    """Multiset-corrected normalization:
    pr(w)^(-s) * prod_a mult_a(w)! / |w|!."""
    pr = 1
    mult = {}
    for a in w:
        pr *= letter_value(a)
        mult[a] = mult.get(a, 0) + 1
    num = 1
    for m in mult.values():
        num *= factorial(m)
    return Fraction(num, pr ** s * factorial(len(w)))


class ZetaValue:
    """Exact truncated value plus a 12-digit decimal rendering."""

    __slots__ = ("normalization", "s", "primes", "trunc_len", "exact", "decimal")

    def __init__(self, normalization, s, primes, trunc_len, exact, decimal):
        self.normalization = normalization
        self.s = s
        self.primes = primes
        self.trunc_len = trunc_len
        self.exact = exact
        self.decimal = decimal

    def __repr__(self):
        ex = "irrational-limit" if self.exact is None else str(self.exact)
        return f"ZetaValue({self.normalization}, s={self.s}, exact={ex}, dec={self.decimal})"


def _twelve_digits(x) -> str:
    with localcontext() as ctx:
        ctx.prec = 40
        if isinstance(x, Fraction):
            d = Decimal(x.numerator) / Decimal(x.denominator)
        else:
            d = x
        return str(d.quantize(Decimal("1." + "0" * 12)))


def zeta_character(s: int, primes, normalization: str = "multiset",
                   trunc_len=None) -> ZetaValue:
    """Evaluate the chosen word-functional on the all-words solution.

    multiset: the per-multiset collapse makes the full sum the finite Euler
    product over the given primes, computed exactly; a finite trunc_len
    instead sums multisets of bounded length (exact dynamic program).
    paper: the literal normalization sums to exp(sum p^-s); reported as a
    decimal since its limit is not rational.
    """
    primes = tuple(sorted(set(int(p) for p in primes)))
    if any(p < 2 for p in primes):
        raise ValueError("prime indexes must be >= 2")
    if normalization == "multiset":
        if trunc_len is None:
            value = Fraction(1)
            for p in primes:
                value *= Fraction(p ** s, p ** s - 1)
        else:
            dp = [Fraction(0)] * (trunc_len + 1)
            dp[0] = Fraction(1)
            for p in primes:
                ps = Fraction(1, p ** s)
                new = list(dp)
                for j in range(1, trunc_len + 1):
                    acc = Fraction(0)
                    q = ps
                    for m in range(1, j + 1):
                        acc += dp[j - m] * q
                        q *= ps
                    new[j] += acc
                dp = new
            value = sum(dp, Fraction(0))
        return ZetaValue("multiset", s, primes, trunc_len, value,
                         _twelve_digits(value))
    if normalization == "paper":
        # sum over all words = exp(S) with S = sum p^-s; evaluate the
        # exponential series in fixed-precision decimal arithmetic
        with localcontext() as ctx:
            ctx.prec = 40
            S = Decimal(0)
            for p in primes:
                S += Decimal(1) / Decimal(p ** s)
            term = Decimal(1)
            total = Decimal(1)
            n = 0
            while True:
                n += 1
                if trunc_len is not None and n > trunc_len:
                    break
                term = term * S / n
                total += term
                if trunc_len is None and n > 5 and abs(term) < Decimal(10) ** (-36):
                    break
        return ZetaValue("paper", s, primes, trunc_len, None,
                         _twelve_digits(total))
    raise ValueError(f"unknown normalization {normalization!r}")
