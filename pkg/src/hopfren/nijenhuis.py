"""Deformed convolution products from the subtraction operator.

Post-composition with an idempotent Rota-Baxter operator gives a Nijenhuis
family Y_lam = R - lam(id - R) on functionals; the deformed product and
bracket it induces, the double Rota-Baxter product, and the vanishing
condition for motion integrals all live here.  Everything is evaluated
lazily against basis forests; nothing is assumed that a sample cannot
refute.
"""

from __future__ import annotations

from .characters import Functional, commutator, convolve, functionals_equal
from .laurent import minimal_subtraction


def upsilon(f: Functional, R=minimal_subtraction) -> Functional:
    """Post-compose with the subtraction operator."""
    return f.compose(R)


def upsilon_lambda(f: Functional, lam, R=minimal_subtraction) -> Functional:
    """Y_lam(f) = R(f) - lam (f - R(f)); Nijenhuis for idempotent R."""
    def rule(forest):
        v = f.value(forest)
        rv = R(v)
        return rv - (v - rv) * lam

    return Functional.general(f.alphabet, f.degree, rule)


def circ_lambda(f: Functional, g: Functional, lam,
                R=minimal_subtraction) -> Functional:
    """f o_lam g = Y(f)*g + f*Y(g) - Y(f*g)."""
    Yf = upsilon_lambda(f, lam, R)
    Yg = upsilon_lambda(g, lam, R)
    return convolve(Yf, g) + convolve(f, Yg) - upsilon_lambda(convolve(f, g), lam, R)


def bracket_lambda(f: Functional, g: Functional, lam,
                   R=minimal_subtraction) -> Functional:
    """[f,g]_lam = [Y f, g] + [f, Y g] - Y([f,g])."""
    Yf = upsilon_lambda(f, lam, R)
    Yg = upsilon_lambda(g, lam, R)
    return (commutator(Yf, g) + commutator(f, Yg)
            - upsilon_lambda(commutator(f, g), lam, R))


def star_r(f: Functional, g: Functional, R=minimal_subtraction) -> Functional:
    """The double product f *_R g = f*R(g) + R(f)*g - f*g."""
    return (convolve(f, g.compose(R)) + convolve(f.compose(R), g)
            - convolve(f, g))


def circ_n(N, f: Functional, g: Functional) -> Functional:
    """The product deformed by an arbitrary operator on functionals."""
    return convolve(N(f), g) + convolve(f, N(g)) - N(convolve(f, g))


def nijenhuis_check(N, samples, forests) -> bool:
    """N(f o_N g) = N(f) * N(g) on every sample pair, over the basis."""
    for f, g in samples:
        lhs = N(circ_n(N, f, g))
        rhs = convolve(N(f), N(g))
        if not functionals_equal(lhs, rhs, forests):
            return False
    return True


def motion_integral_residual(f: Functional, F: Functional, lam=0,
                             R=minimal_subtraction) -> Functional:
    """-lam [f,F] + [f, Y(F)] + [Y(f), F] - Y([f,F]).

    At lam = 0 this is the six-term condition
    R(f)*F - F*R(f) + f*R(F) - R(F)*f - R(f*F) + R(F*f); a motion integral
    makes it vanish identically.
    """
    Yf = upsilon_lambda(f, lam, R)
    YF = upsilon_lambda(F, lam, R)
    out = (commutator(f, YF) + commutator(Yf, F)
           - upsilon_lambda(commutator(f, F), lam, R))
    if lam:
        out = out - commutator(f, F).scale(lam)
    return out


def motion_integral_check(f: Functional, F: Functional, forests, lam=0,
                          R=minimal_subtraction):
    """Evaluate the condition over the basis; (residual, vanishes?)."""
    res = motion_integral_residual(f, F, lam, R)
    ok = all(not res.value(x) for x in forests)
    return res, ok


def counterterm_exchange_sums(f: Functional, phi: Functional, x,
                              R=minimal_subtraction):
    """The two cross sums whose exchange the derivation takes for granted:
    sum R(f(x')) R(phi(x'')) and sum R(phi(x')) R(f(x'')) over the reduced
    coproduct of x.  Exposed for inspection; no identity is asserted.
    """
    from .hopf import coproduct
    from .laurent import LaurentSeries
    from .trees import RootedTree

    if isinstance(x, RootedTree):
        x = x.as_forest()
    lhs = LaurentSeries()
    rhs = LaurentSeries()
    for (u, v), c in coproduct(x).items():
        if u.is_empty() or v.is_empty():
            continue
        lhs = lhs + R(f.value(u)) * R(phi.value(v)) * c
        rhs = rhs + R(phi.value(u)) * R(f.value(v)) * c
    return lhs, rhs
