"""Command-line surface.

Exit codes: 0 success, 1 failed check/selftest, 2 parse error (with line
and column), 3 semantic error (pole overflow, non-locality, truncation)
with a certificate naming the offending object.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from fractions import Fraction

import click

from . import dse as dse_mod
from . import hopf, usf, words
from .characters import (Functional, NonLocalityError, TruncationError,
                         birkhoff_bch, birkhoff_bogoliubov, random_character,
                         rg_flow)
from .hall import HallSet
from .laurent import LaurentSeries, PoleOverflowError
from .nijenhuis import motion_integral_residual
from .parsing import (ParseError, laurent_pairs, parse_alphabet,
                      parse_tree_poly, parse_word, parse_word_poly,
                      read_character_file, read_dse_spec_file)
from .trees import Alphabet, enumerate_trees
from .words import (ADDITIVE_INT_PAIRING, PairingError, WordPoly,
                    ZERO_PAIRING, hoffman_exp, hoffman_log, hu_pairing,
                    lyndon_factorize, lyndon_words, pi_map, qsh_product,
                    render_word, word_antipode, zhao_dual)

_SEMANTIC = (PoleOverflowError, NonLocalityError, TruncationError,
             PairingError, ArithmeticError)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ParseError as e:
            click.echo(f"parse error: {e}", err=True)
            sys.exit(2)
        except _SEMANTIC as e:
            click.echo(f"semantic error: {e}", err=True)
            sys.exit(3)
        except ValueError as e:
            click.echo(f"semantic error: {e}", err=True)
            sys.exit(3)

    return wrapper


def _emit_json(payload):
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def _pairing_by_name(name, sample_word=None):
    if name == "auto":
        if sample_word and all(isinstance(a, int) for a in sample_word):
            return ADDITIVE_INT_PAIRING
        return ZERO_PAIRING
    if name == "zero":
        return ZERO_PAIRING
    if name == "int-add":
        return ADDITIVE_INT_PAIRING
    if name == "index-add":
        return hu_pairing()
    raise click.BadParameter(f"unknown pairing {name!r}")


@click.group()
def main():
    """Exact Hopf-algebra machinery for renormalization combinatorics."""


@main.command()
@click.argument("expr")
@click.option("--json", "as_json", is_flag=True, help="structured output")
@_guarded
def coprod(expr, as_json):
    """Coproduct of a forest polynomial (admissible cuts)."""
    x = parse_tree_poly(expr)
    out = hopf.coproduct(x)
    if as_json:
        _emit_json({
            "input": str(x),
            "terms": [{"left": str(a), "right": str(b), "coeff": str(c)}
                      for (a, b), c in sorted(out.items(),
                                              key=lambda kv: (kv[0][0].key, kv[0][1].key))],
        })
    else:
        click.echo(str(out))


@main.command()
@click.argument("expr")
@click.option("--json", "as_json", is_flag=True)
@_guarded
def antipode(expr, as_json):
    """Antipode of a forest polynomial."""
    x = parse_tree_poly(expr)
    out = hopf.antipode(x)
    if as_json:
        _emit_json({"input": str(x), "antipode": str(out)})
    else:
        click.echo(str(out))


def _series_json(s: LaurentSeries):
    return {"terms": [[k, p] for k, p in laurent_pairs(s)],
            "trunc": s.trunc}


@main.command()
@click.option("--char", "char_path", required=True, type=click.Path(exists=True))
@click.option("--degree", "-d", type=int, default=None,
              help="truncation degree (default: the file's)")
@click.option("--method", type=click.Choice(["bogoliubov", "bch"]),
              default="bogoliubov")
@click.option("--json", "as_json", is_flag=True)
@_guarded
def birkhoff(char_path, degree, method, as_json):
    """Birkhoff factorization tables, tree by tree."""
    phi = read_character_file(char_path)
    degree = phi.degree if degree is None else degree
    factor = birkhoff_bch if method == "bch" else birkhoff_bogoliubov
    pair = factor(phi)
    rows = []
    for t in enumerate_trees(phi.alphabet, degree):
        rows.append((t, pair.minus.value(t), pair.plus.value(t)))
    if as_json:
        _emit_json({"method": method, "degree": degree,
                    "trees": [{"tree": str(t),
                               "minus": _series_json(m),
                               "plus": _series_json(p)}
                              for t, m, p in rows]})
    else:
        for t, m, p in rows:
            click.echo(str(t))
            click.echo(f"  minus = {m}")
            click.echo(f"  plus = {p}")


@main.command()
@click.option("--char", "char_path", required=True, type=click.Path(exists=True))
@click.option("--degree", "-d", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def rg(char_path, degree, as_json):
    """Renormalization-group flow F_t and its generator, tree by tree."""
    phi = read_character_file(char_path)
    degree = phi.degree if degree is None else degree
    Ft, beta = rg_flow(phi)
    rows = []
    try:
        for t in enumerate_trees(phi.alphabet, degree):
            ft = Ft.value(t).coeff(0)
            b = beta.value(t).coeff(0).coeff(0, 0)
            rows.append((t, ft, b))
    except NonLocalityError as e:
        click.echo(f"semantic error: {e}", err=True)
        click.echo(f"certificate: forest {e.forest}, pole order {e.pole_order}",
                   err=True)
        sys.exit(3)
    if as_json:
        _emit_json({"degree": degree,
                    "trees": [{"tree": str(t), "F_t": str(ft), "beta": str(b)}
                              for t, ft, b in rows]})
    else:
        for t, ft, b in rows:
            click.echo(str(t))
            click.echo(f"  F_t = {ft}")
            click.echo(f"  beta = {b}")


@main.command("nijenhuis-check")
@click.option("--char", "char_paths", required=True, multiple=True,
              type=click.Path(exists=True),
              help="two character files: the probe and the flow")
@click.option("--lambda", "lam", default="0", help="deformation parameter p/q")
@click.option("--degree", "-d", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def nijenhuis_check(char_paths, lam, degree, as_json):
    """Motion-integral residual of two functionals, tree by tree."""
    if len(char_paths) != 2:
        raise click.BadParameter("need exactly two --char files")
    f = read_character_file(char_paths[0])
    F = read_character_file(char_paths[1])
    lam = Fraction(lam)
    degree = min(f.degree, F.degree) if degree is None else degree
    res = motion_integral_residual(f, F, lam)
    rows = [(t, res.value(t)) for t in enumerate_trees(f.alphabet, degree)]
    clean = all(not v for _t, v in rows)
    if as_json:
        _emit_json({"lambda": str(lam), "degree": degree,
                    "vanishes": clean,
                    "trees": [{"tree": str(t), "residual": _series_json(v)}
                              for t, v in rows]})
    else:
        for t, v in rows:
            click.echo(f"{t}: {v}")
        click.echo(f"residual vanishes on all trees: {'yes' if clean else 'no'}")


@main.group()
def dse():
    """Combinatorial fixed-point equations."""


@dse.command("solve")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--order", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def dse_solve(spec_path, order, as_json):
    """Solution components c_0..c_N in tree grammar."""
    spec = read_dse_spec_file(spec_path)
    cs = dse_mod.solve_dse(spec, order)
    if as_json:
        _emit_json({"order": order,
                    "components": [str(c) for c in cs]})
    else:
        for n, c in enumerate(cs):
            click.echo(f"c_{n} = {c}")


@dse.command("check")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--order", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def dse_check(spec_path, order, as_json):
    """Verify the solution generates a coproduct-closed subalgebra."""
    spec = read_dse_spec_file(spec_path)
    cs = dse_mod.solve_dse(spec, order)
    ok, witness = dse_mod.subalgebra_check(cs)
    if as_json:
        _emit_json({"order": order, "ok": ok,
                    "witness": None if ok else
                    {"degree": witness[0], "difference": str(witness[1])}})
    else:
        if ok:
            click.echo(f"subalgebra check: PASS to order {order}")
        else:
            click.echo(f"subalgebra check: FAIL at degree {witness[0]}")
            click.echo(f"difference: {witness[1]}")
    if not ok:
        sys.exit(1)


@dse.command("zeta")
@click.option("--s", "s", type=int, default=2, show_default=True)
@click.option("--primes-upto", type=int, required=True)
@click.option("--normalization", type=click.Choice(["multiset", "paper"]),
              default="multiset", show_default=True)
@click.option("--trunc-len", type=int, default=None,
              help="cap on word length (default: closed form over all words)")
@click.option("--json", "as_json", is_flag=True)
@_guarded
def dse_zeta(s, primes_upto, normalization, trunc_len, as_json):
    """Evaluate the word-algebra solution against prime-indexed values."""
    primes = _primes_upto(primes_upto)
    out = dse_mod.zeta_character(s, primes, normalization, trunc_len)
    if as_json:
        _emit_json({"s": s, "primes_upto": primes_upto,
                    "normalization": normalization,
                    "count_primes": len(primes),
                    "exact": None if out.exact is None else str(out.exact),
                    "decimal": out.decimal})
    else:
        click.echo(f"primes up to {primes_upto}: {len(primes)} letters")
        if out.exact is not None:
            click.echo(f"exact = {out.exact}")
        else:
            click.echo("exact = (irrational limit; decimal only)")
        click.echo(f"decimal = {out.decimal}")


def _primes_upto(n):
    sieve = bytearray([1]) * (n + 1) if n >= 0 else bytearray()
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = 0
    return out


@main.command()
@click.option("--alphabet", "alphabet_text", required=True,
              help="letters with optional :weight, e.g. a,b or f2:2,f1:1")
@click.option("--max-degree", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def hall(alphabet_text, max_degree, as_json):
    """Hall trees with foliage and standard decomposition."""
    alphabet = parse_alphabet(alphabet_text)
    hs = HallSet(alphabet, max_degree)
    rows = []
    for d in range(1, max_degree + 1):
        for t in hs.members(d):
            t1, t2 = hs.standard_decomposition(t)
            rows.append((d, t, ".".join(hs.foliage(t)), t1, t2))
    if as_json:
        _emit_json({"max_degree": max_degree,
                    "counts": {str(d): len(hs.members(d))
                               for d in range(1, max_degree + 1)},
                    "members": [{"degree": d, "tree": str(t), "foliage": fol,
                                 "t1": None if t2 is None else str(t1),
                                 "t2": None if t2 is None else str(t2)}
                                for d, t, fol, t1, t2 in rows]})
    else:
        for d, t, fol, t1, t2 in rows:
            dec = "letter" if t2 is None else f"({t1}, {t2})"
            click.echo(f"{d}  {t}  foliage={fol}  decomposition={dec}")
        counts = " ".join(f"{d}:{len(hs.members(d))}"
                          for d in range(1, max_degree + 1))
        click.echo(f"counts: {counts}")


@main.command()
@click.option("--alphabet", "alphabet_text", required=True)
@click.option("--max-len", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def lyndon(alphabet_text, max_len, as_json):
    """Lyndon words up to a length bound."""
    alphabet = parse_alphabet(alphabet_text)
    ws = lyndon_words(alphabet, max_len)
    if as_json:
        _emit_json({"max_len": max_len, "count": len(ws),
                    "words": [render_word(w) for w in ws]})
    else:
        for w in ws:
            click.echo(render_word(w))


_WORD_OPS = ("qsh", "concat", "antipode", "exp", "log", "factorize",
             "zhao", "pi")


@main.command("words")
@click.argument("op", type=click.Choice(_WORD_OPS))
@click.argument("exprs", nargs=-1)
@click.option("--pairing", type=click.Choice(["auto", "zero", "int-add", "index-add"]),
              default="auto", show_default=True)
@click.option("--alphabet", "alphabet_text", default=None,
              help="letter order for factorize")
@click.option("--json", "as_json", is_flag=True)
@_guarded
def words_cmd(op, exprs, pairing, alphabet_text, as_json):
    """Word-algebra operations on word polynomials."""
    def need(n):
        if len(exprs) != n:
            raise click.BadParameter(f"'{op}' needs {n} expression(s)")

    if op in ("qsh", "concat"):
        need(2)
        x = parse_word_poly(exprs[0])
        y = parse_word_poly(exprs[1])
        sample = next(iter(x.keys()), ())
        if op == "qsh":
            out = qsh_product(x, y, _pairing_by_name(pairing, sample))
        else:
            out = words.concat_product(x, y)
    elif op in ("antipode", "exp", "log"):
        need(1)
        x = parse_word_poly(exprs[0])
        sample = next(iter(x.keys()), ())
        pr = _pairing_by_name(pairing, sample)
        fn = {"antipode": word_antipode, "exp": hoffman_exp,
              "log": hoffman_log}[op]
        out = fn(x, pr)
    elif op == "factorize":
        need(1)
        if alphabet_text is None:
            raise click.BadParameter("factorize needs --alphabet")
        w = parse_word(exprs[0])
        alphabet = parse_alphabet(alphabet_text)
        if all(len(str(a)) == 1 for a in alphabet.letters):
            # compact runs like baab mean single-char letters
            w = tuple(ch for tok in w for ch in str(tok))
        factors = lyndon_factorize(w, alphabet)
        payload = " * ".join(render_word(f) for f in factors)
        if as_json:
            _emit_json({"word": render_word(w),
                        "factors": [render_word(f) for f in factors]})
        else:
            click.echo(payload)
        return
    elif op == "zhao":
        need(1)
        out = zhao_dual(parse_tree_poly(exprs[0]))
    else:
        need(1)
        x = parse_tree_poly(exprs[0])
        sample = ()
        out = pi_map(x, _pairing_by_name(pairing, sample))
    if as_json:
        _emit_json({"op": op, "result": str(out)})
    else:
        click.echo(str(out))


@main.group("usf", invoke_without_command=True)
@click.option("--order", type=int, default=None)
@click.option("--max-weight", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
@_guarded
def usf_cmd(ctx, order, max_weight, as_json):
    """Universal singular frame chains, coefficients, markers."""
    if ctx.invoked_subcommand is not None:
        return
    if order is None or max_weight is None:
        raise click.BadParameter("usf needs --order and --max-weight")
    fe = usf.usf_expand(order, max_weight)
    if as_json:
        _emit_json({"order": order, "max_weight": max_weight,
                    "chains": [{"chain": list(c),
                                "coefficient": str(fe.terms[c]),
                                "v_power": fe.marker(c)[0],
                                "z_power": fe.marker(c)[1]}
                               for c in fe.chains()]})
    else:
        click.echo(str(fe))


@usf_cmd.command("check-hall")
@click.option("--max-weight", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
@_guarded
def usf_check_hall(max_weight, as_json):
    """Hall representation of the frame, truncated by weight."""
    ok, lhs, rhs = usf.hall_representation_check(max_weight)
    if as_json:
        _emit_json({"max_weight": max_weight, "ok": ok})
    else:
        click.echo(f"hall representation to weight {max_weight}: "
                   f"{'PASS' if ok else 'FAIL'}")
        if not ok:
            click.echo(f"difference: {lhs - rhs}")
    if not ok:
        sys.exit(1)


@main.command()
@click.option("--json", "as_json", is_flag=True)
def selftest(as_json):
    """Run the cross-module invariant suite; exit 1 on any failure."""
    results = []

    def run(name, fn):
        try:
            ok = bool(fn())
        except Exception as e:  # a crash is a failure with a message
            results.append((name, False, f"{type(e).__name__}: {e}"))
            return
        results.append((name, ok, None))

    from .hopf import antipode as S, antipode_series, coproduct, counit
    from .hopf import cocycle_check
    from .laurent import minimal_subtraction, rota_baxter_check
    from .trees import TreePoly, b_plus, enumerate_forests, leaf, trees_of_weight
    from .characters import (conv_inverse, convolve, functionals_equal,
                             is_multiplicative, rg_one_parameter_check,
                             time_ordered_counterterm)

    ab = Alphabet(["a", "b"])
    forests4 = enumerate_forests(ab, 4)

    def hopf_axioms():
        for f in forests4:
            x = TreePoly.basis(f)
            ssx = S(S(x))
            if ssx != x:
                return False
            acc = TreePoly.zero()
            for (u, v), c in coproduct(x).items():
                acc = acc + (S(TreePoly.basis(u)) * TreePoly.basis(v)).scale(c)
            want = TreePoly.one().scale(counit(x))
            if acc != want:
                return False
        return True

    run("hopf axioms to weight 4", hopf_axioms)
    run("antipode matches the series oracle",
        lambda: all(S(TreePoly.basis(f)) == antipode_series(TreePoly.basis(f))
                    for f in forests4))
    run("grafting is a cocycle",
        lambda: cocycle_check(lambda x: b_plus("a", x), forests4)[0])

    rng = random.Random(7)

    def rb_samples():
        out = []
        for _ in range(6):
            c1 = {k: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                  for k in range(-2, 3)}
            c2 = {k: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                  for k in range(-2, 3)}
            out.append((LaurentSeries(c1), LaurentSeries(c2)))
        return out

    run("minimal subtraction is weight-one Rota-Baxter",
        lambda: rota_baxter_check(minimal_subtraction, rb_samples()))

    def birkhoff_props():
        phi = random_character(ab, 3, rng)
        pair = birkhoff_bogoliubov(phi)
        fs = enumerate_forests(ab, 3)
        recomposed = convolve(pair.minus, phi)
        if not functionals_equal(recomposed, pair.plus, fs):
            return False
        return (is_multiplicative(pair.minus, fs)
                and is_multiplicative(pair.plus, fs))

    run("birkhoff recomposition and multiplicativity", birkhoff_props)

    def rg_local():
        vals = {}
        for w in range(1, 3):
            for t in trees_of_weight(ab, w):
                vals[t] = Fraction(rng.randint(1, 5), rng.randint(1, 3))
        beta0 = Functional.infinitesimal(ab, 3, vals)
        phi = conv_inverse(time_ordered_counterterm(beta0))
        Ft, beta1 = rg_flow(phi)
        fs = enumerate_forests(ab, 3)
        for f in fs:
            Ft.value(f)
        if not rg_one_parameter_check(Ft, fs):
            return False
        return all(beta1.value(t.as_forest()) == beta0.value(t.as_forest())
                   for w in range(1, 3) for t in trees_of_weight(ab, w))

    run("rg flow is pole-free on a local character", rg_local)

    def hoffman_inverse():
        ws = [(), ("a",), ("a", "b"), ("b", "a", "a")]
        for w in ws:
            x = WordPoly.basis(w)
            if hoffman_exp(hoffman_log(x, ZERO_PAIRING), ZERO_PAIRING) != x:
                return False
        return True

    run("hoffman exp/log invert", hoffman_inverse)

    def hall_vs_lyndon():
        hs = HallSet(ab, 5)
        for d in range(1, 6):
            lw = [w for w in lyndon_words(ab, 5) if len(w) == d]
            if len(hs.members(d)) != len(lw):
                return False
        return hs.audit()[0]

    run("hall members count lyndon words", hall_vs_lyndon)

    def dse_props():
        spec = dse_mod.DSESpec([(1, 1, "g")])
        cs = dse_mod.solve_dse(spec, 4)
        if dse_mod.subalgebra_check(cs)[0] is not True:
            return False
        return cs == dse_mod.tree_formula_solution(spec, 4)

    run("dse solution closes and matches the tree formula", dse_props)

    run("frame coefficients are simplex volumes",
        lambda: all(usf.chain_coefficient(c) == usf.simplex_integral(c)
                    for c in usf.usf_expand(6, 6).chains()))
    run("hall representation of the frame to weight 3",
        lambda: usf.hall_representation_check(3)[0])

    passed = sum(1 for _n, ok, _m in results if ok)
    failed = len(results) - passed
    if as_json:
        _emit_json({"passed": passed, "failed": failed,
                    "results": [{"name": n, "ok": ok, "message": m}
                                for n, ok, m in results]})
    else:
        for n, ok, m in results:
            mark = "ok" if ok else "FAIL"
            suffix = "" if m is None else f"  ({m})"
            click.echo(f"{mark:4} {n}{suffix}")
        click.echo(f"{passed} passed, {failed} failed")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
