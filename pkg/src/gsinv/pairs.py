"""Corpus of closed-form transform pairs with regularity classes.

Each pair stores an exact transform expression evaluated at arbitrary
precision (the abscissas k ln2/x are irrational and precision-dependent,
so tabulated values would be useless), a reference original, a regularity
class asserted by construction, and the jump data needed to form Jordan
midpoint targets.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .inverter import InversionReport, TransformFn, invert_ladder
from .numerics import PrecisionContext, integrate

__all__ = [
    "TransformPair",
    "corpus",
    "get_pair",
    "run_pair",
    "jordan_target",
    "dini_integral_estimate",
    "DiniEstimate",
    "laplace_identity_residual",
    "corpus_manifest_json",
]

CLASSES = ("smooth", "dini", "bounded-variation-jump", "oscillatory")


@dataclass(frozen=True)
class TransformPair:
    """A transform evaluator with its known original.

    ``jumps`` lists (location, left limit, right limit); locations are
    exact rationals.  ``formula`` is the human-readable transform
    expression for manifests.
    """

    name: str
    F: TransformFn
    f_ref: object
    klass: str
    formula: str
    jumps: tuple = ()
    oscillatory_flag: bool = False

    def __post_init__(self):
        if self.klass not in CLASSES:
            raise DomainError(f"unknown regularity class {self.klass!r}")


def _sq_ref(t):
    # square wave: 1 on [2m, 2m+1), 0 on [2m+1, 2m+2)
    fl = int(t.context.floor(t))
    return t.context.mpf(1 if fl % 2 == 0 else 0)


def corpus() -> tuple[TransformPair, ...]:
    """The built-in pairs instantiating the convergence theorem's classes."""
    return (
        TransformPair(
            "constant",
            TransformFn(lambda z: 1 / z, "1/z"),
            lambda t: t.context.mpf(1),
            "smooth",
            "1/z",
        ),
        TransformPair(
            "ramp",
            TransformFn(lambda z: 1 / z**2, "1/z^2"),
            lambda t: t,
            "smooth",
            "1/z^2",
        ),
        TransformPair(
            "exponential",
            TransformFn(lambda z: 1 / (z + 1), "1/(z+1)"),
            lambda t: t.context.exp(-t),
            "smooth",
            "1/(z+1)",
        ),
        TransformPair(
            "root",
            TransformFn(lambda z: z.context.sqrt(z.context.pi / z), "sqrt(pi/z)"),
            lambda t: 1 / t.context.sqrt(t),
            "smooth",
            "sqrt(pi/z)",
        ),
        TransformPair(
            "step",
            TransformFn(lambda z: z.context.exp(-z) / z, "exp(-z)/z"),
            lambda t: t.context.mpf(1 if t >= 1 else 0),
            "bounded-variation-jump",
            "exp(-z)/z",
            jumps=((Fraction(1), 0, 1),),
        ),
        TransformPair(
            "square-wave",
            TransformFn(lambda z: 1 / (z * (1 + z.context.exp(-z))), "1/(z(1+exp(-z)))"),
            _sq_ref,
            "bounded-variation-jump",
            "1/(z(1+exp(-z)))",
            jumps=tuple(
                (Fraction(k), 1 if k % 2 == 1 else 0, 0 if k % 2 == 1 else 1)
                for k in range(1, 81)
            ),
        ),
        TransformPair(
            "sine",
            TransformFn(lambda z: 1 / (1 + z**2), "1/(1+z^2)"),
            lambda t: t.context.sin(t),
            "oscillatory",
            "1/(1+z^2)",
            oscillatory_flag=True,
        ),
    )


def get_pair(name: str) -> TransformPair:
    for p in corpus():
        if p.name == name:
            return p
    raise DomainError(f"no corpus pair named {name!r}")


def jordan_target(pair: TransformPair, x, ctx: PrecisionContext):
    """Reference value at ``x``: f_ref(x), or the jump midpoint at a jump."""
    x = ctx.mpf(x)
    for loc, left, right in pair.jumps:
        if x == ctx.mpf(loc):
            return (ctx.mpf(left) + ctx.mpf(right)) / 2
    return ctx.mpf(pair.f_ref(x))


def run_pair(pair: TransformPair, x, n_max: int, ctx: PrecisionContext | None = None) -> InversionReport:
    """Ladder for a corpus pair, with errors against the Jordan target."""
    from .numerics import context_for_order

    if ctx is None:
        ctx = context_for_order(n_max)
    target = jordan_target(pair, x, ctx)
    flags = ("oscillatory",) if pair.oscillatory_flag else ()
    return invert_ladder(pair.F, x, n_max, ref=lambda _x: target, ctx=ctx, flags=flags)


@dataclass(frozen=True)
class DiniEstimate:
    value: object
    divergent: bool
    increment: object  # growth when v_min shrinks by one decade


def dini_integral_estimate(pair: TransformPair, x, c, epsilon, ctx: PrecisionContext) -> DiniEstimate:
    """Quadrature estimate of the local Dini integral for a pair.

    Estimates integral over [v_min, eps] of
    ``|f(-x log2(1/2+v)) + f(-x log2(1/2-v)) - 2c| / v`` with
    ``v_min = 10^-(digits/2)``, plus a divergence flag: the integrand is
    re-integrated from ``v_min/10`` and growth beyond a vanishing fraction
    of a log decade marks the integral as apparently divergent.

    The integrand carries an absolute value, so accuracy relies on the
    symmetrized oscillation keeping one sign near 0; the default corpus
    satisfies this at the points the tests probe.
    """
    m = ctx.mp
    x = ctx.mpf(x)
    c = ctx.mpf(c)
    eps = ctx.mpf(epsilon)
    if not 0 < eps < m.mpf(1) / 4:
        raise DomainError("epsilon must lie in (0, 1/4)")
    half = m.mpf(1) / 2
    ln2 = m.ln(2)
    f = pair.f_ref

    def integrand(v):
        g = f(-x * m.ln(half + v) / ln2) + f(-x * m.ln(half - v) / ln2) - 2 * c
        return abs(g) / v

    v_min = m.mpf(10) ** (-(ctx.digits // 2))
    base = integrate(integrand, v_min, eps, ctx)
    extended = integrate(integrand, v_min / 10, v_min, ctx)
    threshold = m.mpf("1e-6") * max(m.mpf(1), abs(base))
    return DiniEstimate(value=base, divergent=bool(extended > threshold), increment=extended)


def laplace_identity_residual(pair: TransformPair, z, ctx: PrecisionContext):
    """|integral_0^inf e^(-z t) f_ref(t) dt - F(z)|, split at the jumps.

    The quadrature is piecewise between consecutive jump locations (plus
    a semi-infinite tail), since the double-exponential rule assumes
    smoothness away from the endpoints.
    """
    m = ctx.mp
    z = ctx.mpf(z)
    if not z > 0:
        raise DomainError("identity probed for real z > 0 only")
    f = pair.f_ref

    def integrand(t):
        return m.exp(-z * t) * f(t)

    # keep enough pieces that the tail beyond the last split is negligible
    span = (ctx.digits + ctx.guard + 5) * m.ln(10) / z
    splits = [ctx.mpf(loc) for loc, _l, _r in pair.jumps if ctx.mpf(loc) < span]
    total = m.mpf(0)
    lo = m.mpf(0)
    for s in splits:
        total += integrate(integrand, lo, s, ctx)
        lo = s
    total += integrate(integrand, lo, m.inf, ctx)
    return abs(total - pair.F(z))


def corpus_manifest_json() -> str:
    """Manifest (name, class, jumps, transform formula) as JSON."""
    rows = []
    for p in corpus():
        rows.append(
            {
                "name": p.name,
                "class": p.klass,
                "formula": p.formula,
                "oscillatory_flag": p.oscillatory_flag,
                "jumps": [
                    {"location": str(loc), "left": str(l), "right": str(r)}
                    for loc, l, r in p.jumps
                ],
            }
        )
    return json.dumps({"pairs": rows}, indent=2)
