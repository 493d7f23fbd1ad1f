"""Text grammars for trees, words, series, and the two file formats.

Everything the CLI prints re-parses to an equal value through these
functions.  Errors carry 1-based line and column positions.

Grammars:
  tree     := label | label "[" forest "]"
  forest   := tree (" " tree)*            ("1" is the empty forest)
  treepoly := term (("+" | "-") term)*    term := coeff "*" forest | coeff | forest
  word     := label ("." label)* | "(" int ("," int)* ")" | "1"
  laurent  := sterm (("+" | "-") sterm)* ["+" "O(z^" int ")"]
              sterm := coeffpart [("/" | "*") zpow] | zpow
              coeffpart := "(" poly ")" | rational | monomial
              zpow  := "z" ["^" int]
  poly     := monomial (("+" | "-") monomial)*
              monomial := rational ["*" syms] | syms,  syms := (t|v)["^" int] ("*" sym)*
"""

from __future__ import annotations

import re
from fractions import Fraction

from .characters import Functional
from .dse import DSESpec
from .laurent import LaurentSeries, Poly
from .trees import Alphabet, Forest, RootedTree, TreePoly, natural_key
from .words import WordPoly

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")
_INT = re.compile(r"[+-]?\d+")


class ParseError(ValueError):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.reason = message
        self.line = line
        self.col = col

    def shifted(self, line_offset, col_offset=0):
        col = self.col + col_offset if self.line == 1 else self.col
        return ParseError(self.reason, self.line + line_offset, col)


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def line_col(self):
        head = self.text[:self.pos]
        line = head.count("\n") + 1
        col = self.pos - (head.rfind("\n") + 1) + 1
        return line, col

    def error(self, message):
        line, col = self.line_col()
        raise ParseError(message, line, col)

    def eof(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, s):
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def expect(self, s):
        if not self.accept(s):
            self.error(f"expected {s!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def match(self, regex):
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return m.group()
        return None

    def expect_end(self):
        self.skip_ws()
        if not self.eof():
            self.error(f"unexpected trailing input {self.text[self.pos:self.pos+10]!r}")


def parse_rational(text) -> Fraction:
    cur = _Cursor(text.strip())
    out = _rational(cur)
    cur.expect_end()
    return out


def _rational(cur) -> Fraction:
    s = cur.match(_RATIONAL)
    if s is None:
        cur.error("expected a rational number")
    return Fraction(s)


# ---------------------------------------------------------------------------
# Trees


def _tree(cur) -> RootedTree:
    label = cur.match(_IDENT)
    if label is None:
        cur.error("expected a letter name")
    if cur.accept("["):
        children = []
        cur.skip_ws()
        while not cur.accept("]"):
            if cur.eof():
                cur.error("unclosed '['")
            children.append(_tree(cur))
            cur.skip_ws()
        return RootedTree(label, children)
    return RootedTree(label)


def _forest(cur) -> Forest:
    trees = []
    cur.skip_ws()
    while not cur.eof() and (cur.peek().isalpha() or cur.peek() == "_"):
        trees.append(_tree(cur))
        cur.skip_ws()
    return Forest(trees)


def parse_tree(text) -> RootedTree:
    cur = _Cursor(text.strip())
    t = _tree(cur)
    cur.expect_end()
    return t


def parse_forest(text) -> Forest:
    s = text.strip()
    if s == "1":
        return Forest()
    cur = _Cursor(s)
    f = _forest(cur)
    if f.is_empty():
        cur.error("expected a forest")
    cur.expect_end()
    return f


def parse_tree_poly(text) -> TreePoly:
    cur = _Cursor(text.strip())
    acc = TreePoly.zero()
    first = True
    while True:
        cur.skip_ws()
        sign = Fraction(1)
        if cur.accept("+"):
            if first:
                cur.error("a polynomial cannot start with '+'")
            cur.skip_ws()
        elif not first and cur.accept("-"):
            sign = Fraction(-1)
            cur.skip_ws()
        elif not first:
            break
        ch = cur.peek()
        if ch.isdigit() or ch == "-":
            c = sign * _rational(cur)
            if cur.accept("*"):
                f = _forest(cur)
                if f.is_empty():
                    cur.error("expected a forest after '*'")
            else:
                f = Forest()
            acc = acc + TreePoly.basis(f, c)
        elif ch.isalpha() or ch == "_":
            acc = acc + TreePoly.basis(_forest(cur), sign)
        else:
            cur.error("expected a term")
        first = False
        cur.skip_ws()
        if cur.eof():
            break
        if cur.peek() not in "+-":
            cur.error("expected '+' or '-' between terms")
    return acc


# ---------------------------------------------------------------------------
# Words


def _word(cur):
    if cur.accept("("):
        parts = []
        while True:
            s = cur.match(_INT)
            if s is None:
                cur.error("expected an integer part")
            parts.append(int(s))
            if cur.accept(")"):
                return tuple(parts)
            cur.expect(",")
    letters = []
    while True:
        a = cur.match(_IDENT)
        if a is None:
            cur.error("expected a letter name")
        letters.append(a)
        if not cur.accept("."):
            return tuple(letters)


def parse_word(text):
    s = text.strip()
    if s == "1":
        return ()
    cur = _Cursor(s)
    w = _word(cur)
    cur.expect_end()
    return w


def parse_word_poly(text) -> WordPoly:
    cur = _Cursor(text.strip())
    acc = WordPoly.zero()
    first = True
    while True:
        cur.skip_ws()
        sign = Fraction(1)
        if cur.accept("+"):
            if first:
                cur.error("a polynomial cannot start with '+'")
            cur.skip_ws()
        elif not first and cur.accept("-"):
            sign = Fraction(-1)
            cur.skip_ws()
        elif not first:
            break
        ch = cur.peek()
        if ch.isdigit() or ch == "-":
            c = sign * _rational(cur)
            if cur.accept("*"):
                w = _word(cur)
            else:
                w = ()
            acc = acc + WordPoly.basis(w, c)
        elif ch.isalpha() or ch == "_" or ch == "(":
            acc = acc + WordPoly.basis(_word(cur), sign)
        else:
            cur.error("expected a term")
        first = False
        cur.skip_ws()
        if cur.eof():
            break
        if cur.peek() not in "+-":
            cur.error("expected '+' or '-' between terms")
    return acc


# ---------------------------------------------------------------------------
# Polynomials in t, v and Laurent series in z


def _symbol_powers(cur):
    powers = {"t": 0, "v": 0}
    saw = False
    while True:
        mark = cur.pos
        if saw and not cur.accept("*"):
            break
        sym = cur.peek()
        if sym not in ("t", "v"):
            cur.pos = mark
            break
        # a word character right after means this was an identifier
        nxt = cur.text[cur.pos + 1] if cur.pos + 1 < len(cur.text) else ""
        if nxt.isalnum() or nxt == "_":
            cur.pos = mark
            break
        cur.pos += 1
        saw = True
        k = 1
        if cur.accept("^"):
            s = cur.match(_INT)
            if s is None:
                cur.error("expected an exponent")
            k = int(s)
        powers[sym] += k
    return saw, powers["t"], powers["v"]


def _poly_monomial(cur, sign) -> Poly:
    ch = cur.peek()
    if ch.isdigit() or ch == "-" or ch == "+":
        c = sign * _rational(cur)
        if cur.accept("*"):
            saw, i, j = _symbol_powers(cur)
            if not saw:
                cur.error("expected t or v after '*'")
            return Poly.monomial(i, j, c)
        return Poly(c)
    saw, i, j = _symbol_powers(cur)
    if not saw:
        cur.error("expected a monomial")
    return Poly.monomial(i, j, sign)


def _poly_body(cur, stop="") -> Poly:
    acc = Poly()
    first = True
    while True:
        cur.skip_ws()
        sign = Fraction(1)
        if not first:
            if cur.accept("+"):
                pass
            elif cur.accept("-"):
                sign = Fraction(-1)
            else:
                break
            cur.skip_ws()
        acc = acc + _poly_monomial(cur, sign)
        first = False
        cur.skip_ws()
        if cur.eof() or (stop and cur.peek() in stop):
            break
    return acc


def parse_poly(text) -> Poly:
    cur = _Cursor(text.strip())
    p = _poly_body(cur)
    cur.expect_end()
    return p


def _zpow(cur) -> int:
    cur.expect("z")
    if cur.accept("^"):
        s = cur.match(_INT)
        if s is None:
            cur.error("expected an exponent after '^'")
        return int(s)
    return 1


def parse_laurent(text, pole_bound=None) -> LaurentSeries:
    cur = _Cursor(text.strip())
    coeffs = {}
    trunc = None
    first = True
    while True:
        cur.skip_ws()
        sign = Fraction(1)
        if cur.accept("+"):
            if first:
                cur.error("a series cannot start with '+'")
            cur.skip_ws()
        elif not first and cur.accept("-"):
            sign = Fraction(-1)
            cur.skip_ws()
        elif not first:
            break
        if cur.accept("O(z^"):
            s = cur.match(_INT)
            if s is None:
                cur.error("expected an order in O(z^k)")
            cur.expect(")")
            trunc = int(s) - 1
            cur.expect_end()
            break
        ch = cur.peek()
        power = 0
        if ch == "(":
            cur.accept("(")
            c = _poly_body(cur, stop=")")
            cur.expect(")")
            if cur.accept("/"):
                power = -_zpow(cur)
            elif cur.accept("*"):
                power = _zpow(cur)
            c = c * sign
        elif ch == "z":
            power = _zpow(cur)
            c = Poly(sign)
        elif ch.isdigit() or ch == "-":
            c = Poly(sign * _rational(cur))
            if cur.accept("/"):
                power = -_zpow(cur)
            elif cur.accept("*"):
                power = _zpow(cur)
        elif ch in "tv":
            c = _poly_monomial(cur, sign)
            if cur.accept("/"):
                power = -_zpow(cur)
            elif cur.accept("*"):
                power = _zpow(cur)
        else:
            cur.error("expected a series term")
        prev = coeffs.get(power, Poly())
        coeffs[power] = prev + c
        first = False
        cur.skip_ws()
        if cur.eof():
            break
        if cur.peek() not in "+-":
            cur.error("expected '+' or '-' between terms")
    kwargs = {} if pole_bound is None else {"pole_bound": pole_bound}
    return LaurentSeries(coeffs, trunc=trunc, **kwargs)


def laurent_pairs(s: LaurentSeries):
    """Structured view: sorted (power, polynomial text) pairs."""
    return [(k, str(s.coeffs[k])) for k in sorted(s.coeffs)]


# ---------------------------------------------------------------------------
# Character definition files


def _parse_alphabet_decl(body, line_no):
    letters = []
    weights = []
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            name, w = part.split(":", 1)
            name = name.strip()
            try:
                weights.append(int(w.strip()))
            except ValueError:
                raise ParseError(f"bad weight {w.strip()!r}", line_no) from None
        else:
            name = part
            weights.append(1)
        letters.append(name)
    if not letters:
        raise ParseError("empty alphabet declaration", line_no)
    try:
        return Alphabet(letters, weights)
    except ValueError as e:
        raise ParseError(str(e), line_no) from None


def parse_alphabet(text) -> Alphabet:
    """Comma-separated letters with optional :weight suffixes."""
    return _parse_alphabet_decl(text, 1)


def _header_split(line):
    """Split a header line "key value" or "key = value" into (key, sep, value)."""
    head, sep, body = line.partition("=")
    if sep:
        return head.strip(), sep, body.strip()
    head, sep, body = line.partition(" ")
    return head.strip(), sep, body.strip()


def parse_character_text(text, pole_bound=None) -> Functional:
    """Header lines (kind, degree, optional alphabet with letter:weight
    entries), then one "forest = laurent series" line per value.  '#'
    starts a comment.  The keywords kind/degree/alphabet are reserved: a
    value line must not use them as its leftmost vertex label."""
    kind = None
    degree = None
    alphabet = None
    raw_values = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = _header_split(line)
        if head not in ("kind", "degree", "alphabet"):
            if "=" not in line:
                raise ParseError(f"expected 'forest = series', got {line!r}",
                                 line_no)
            lhs, rhs = line.split("=", 1)
            indent = len(raw) - len(raw.lstrip())
            try:
                forest = parse_forest(lhs.strip())
            except ParseError as e:
                raise e.shifted(line_no - 1, indent) from None
            rhs_col = raw.index("=", indent) + 1
            rhs_col += len(rhs) - len(rhs.lstrip())
            try:
                series = parse_laurent(rhs.strip(), pole_bound=pole_bound)
            except ParseError as e:
                raise e.shifted(line_no - 1, rhs_col) from None
            raw_values.append((line_no, forest, series))
            continue
        if head == "kind":
            if body not in ("character", "infinitesimal", "general"):
                raise ParseError(f"unknown kind {body!r}", line_no)
            kind = body
        elif head == "degree":
            try:
                degree = int(body)
            except ValueError:
                raise ParseError(f"bad degree {body!r}", line_no) from None
        elif head == "alphabet":
            alphabet = _parse_alphabet_decl(body, line_no)
    if kind is None:
        raise ParseError("missing 'kind' header")
    if degree is None:
        raise ParseError("missing 'degree' header")
    if alphabet is None:
        letters = sorted({a for _n, f, _s in raw_values
                          for t in f.trees for a in t.vertex_labels()},
                         key=natural_key)
        if not letters:
            raise ParseError("no alphabet declared and no values to infer it from")
        alphabet = Alphabet(letters)
    if kind in ("character", "infinitesimal"):
        tree_values = {}
        for line_no, forest, series in raw_values:
            if len(forest) != 1:
                raise ParseError(
                    f"{kind} values must be keyed by single trees", line_no)
            tree_values[forest.trees[0]] = series
        return Functional(alphabet, degree, kind, tree_values=tree_values)
    table = {forest: series for _n, forest, series in raw_values}
    return Functional.general(alphabet, degree,
                              lambda f: table.get(f, LaurentSeries()))


def read_character_file(path, pole_bound=None) -> Functional:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_character_text(fh.read(), pole_bound=pole_bound)


# ---------------------------------------------------------------------------
# DSE spec files


def parse_dse_spec_text(text) -> DSESpec:
    terms = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'n omega label'", line_no)
        try:
            n = int(parts[0])
        except ValueError:
            raise ParseError(f"bad index {parts[0]!r}", line_no) from None
        try:
            omega = Fraction(parts[1])
        except ValueError:
            raise ParseError(f"bad coefficient {parts[1]!r}", line_no) from None
        if not _IDENT.fullmatch(parts[2]):
            raise ParseError(f"bad label {parts[2]!r}", line_no)
        terms.append((n, omega, parts[2]))
    if not terms:
        raise ParseError("empty spec")
    try:
        return DSESpec(terms)
    except ValueError as e:
        raise ParseError(str(e)) from None


def read_dse_spec_file(path) -> DSESpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_dse_spec_text(fh.read())
