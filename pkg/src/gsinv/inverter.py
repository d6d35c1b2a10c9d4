"""Gaver functionals, accelerated approximants and convergence probes.

The two algebraically identical routes to the order-``n`` approximant are
kept as separate code paths on purpose: the collapsed form
(:func:`stehfest_approx`) is the production evaluator, the accelerated
combination of Gaver functionals (:func:`stehfest_via_gaver`) is its
independent witness, and the test suite holds them together to within
``10**(-digits + guard + 2)``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .coeffs import gaver_stehfest_coeffs, stehfest_weights
from .errors import DomainError, ProbeError, TransformEvaluationError
from .lambertw import xi_alpha
from .numerics import PrecisionContext, context_for_order, integrate, required_digits

__all__ = [
    "TransformFn",
    "InversionReport",
    "ReportEntry",
    "gaver_approx",
    "stehfest_approx",
    "stehfest_via_gaver",
    "invert_ladder",
    "expansion_probe",
    "equivalence_probe",
]


@dataclass(frozen=True)
class TransformFn:
    """A Laplace transform evaluator F(z) for real z > 0, with a label.

    ``eval`` must be deterministic and defined for every requested
    abscissa; it receives a high-precision scalar and should derive any
    constants it needs from ``z.context`` so results carry the caller's
    precision.
    """

    eval: object
    label: str = ""

    def __call__(self, z):
        return self.eval(z)


@dataclass(frozen=True)
class ReportEntry:
    n: int
    value: object
    abs_error: object | None = None


@dataclass(frozen=True)
class InversionReport:
    """Ladder of approximants at one evaluation point.

    ``flags`` carries caller-asserted caveats, e.g. ``"oscillatory"`` for
    transforms the convergence theory does not cover.
    """

    x: object
    entries: tuple[ReportEntry, ...]
    digits_used: int
    flags: tuple[str, ...] = ()

    def to_json_dict(self, ctx: PrecisionContext) -> dict:
        rows = []
        for e in self.entries:
            row = {"n": e.n, "value": ctx.nstr(e.value)}
            row["abs_error"] = None if e.abs_error is None else ctx.nstr(e.abs_error)
            rows.append(row)
        return {
            "x": ctx.nstr(self.x),
            "digits": self.digits_used,
            "flags": list(self.flags),
            "entries": rows,
        }

    def to_csv(self, ctx: PrecisionContext) -> str:
        lines = ["n,value,abs_error,digits"]
        for e in self.entries:
            err = "" if e.abs_error is None else ctx.nstr(e.abs_error)
            lines.append(f"{e.n},{ctx.nstr(e.value)},{err},{self.digits_used}")
        return "\n".join(lines) + "\n"


class _AbscissaCache:
    """Per-call cache of F(j ln2 / x); both summation routes re-query
    overlapping abscissas."""

    def __init__(self, F, x, ctx):
        self.F = F
        self.ctx = ctx
        self.base = ctx.mp.ln(2) / ctx.mpf(x)
        self.values: dict[int, object] = {}

    def __call__(self, j: int):
        if j not in self.values:
            z = j * self.base
            try:
                self.values[j] = self.F(z)
            except Exception as exc:  # attach the offending abscissa
                raise TransformEvaluationError(
                    f"transform evaluation failed at z = {self.ctx.nstr(z)}", z=z
                ) from exc
        return self.values[j]


def _check_point(x, ctx):
    x = ctx.mpf(x)
    if not x > 0:
        raise DomainError(f"evaluation point must be > 0, got {x}")
    return x


def gaver_approx(F, x, k: int, ctx: PrecisionContext, _cache=None):
    """Order-``k`` Gaver functional.

    ln2/x * (2k)!/(k!(k-1)!) * sum_{i=0}^k C(k,i) (-1)^i F((k+i) ln2/x)

    The binomial factors are computed exactly and converted once.
    Requires ``ctx.digits >= required_digits(k)``.
    """
    x = _check_point(x, ctx)
    if ctx.digits < required_digits(k):
        warnings.warn(
            f"digits={ctx.digits} below required_digits({k})={required_digits(k)}; "
            "expect cancellation loss",
            stacklevel=2,
        )
    m = ctx.mp
    cache = _cache or _AbscissaCache(F, x, ctx)
    pre = Fraction(factorial(2 * k), factorial(k) * factorial(k - 1))
    acc = m.mpf(0)
    for i in range(k + 1):
        acc += ctx.mpf((-1) ** i * comb(k, i)) * cache(k + i)
    return m.ln(2) / x * ctx.mpf(pre) * acc


def stehfest_approx(F, x, n: int, ctx: PrecisionContext):
    """Order-``n`` accelerated approximant, collapsed form.

    ln2/x * sum_{k=1}^{2n} a_k(n) F(k ln2 / x)
    """
    x = _check_point(x, ctx)
    if ctx.digits < required_digits(n):
        warnings.warn(
            f"digits={ctx.digits} below required_digits({n})={required_digits(n)}; "
            "expect cancellation loss",
            stacklevel=2,
        )
    m = ctx.mp
    cache = _AbscissaCache(F, x, ctx)
    a = gaver_stehfest_coeffs(n).a
    acc = m.mpf(0)
    for k in range(1, 2 * n + 1):
        acc += ctx.mpf(a[k - 1]) * cache(k)
    return m.ln(2) / x * acc


def stehfest_via_gaver(F, x, n: int, ctx: PrecisionContext):
    """Order-``n`` approximant as sum_k c_k(n) * gaver_approx(F, x, k).

    Algebraically identical to :func:`stehfest_approx`; kept as the
    independent second route for the two-path agreement checks.
    """
    x = _check_point(x, ctx)
    cache = _AbscissaCache(F, x, ctx)
    c = stehfest_weights(n).c
    acc = ctx.mp.mpf(0)
    for k in range(1, n + 1):
        acc += ctx.mpf(c[k - 1]) * gaver_approx(F, x, k, ctx, _cache=cache)
    return acc


def invert_ladder(F, x, n_max: int, ref=None, ctx: PrecisionContext | None = None,
                  flags=()):
    """Approximants for n = 1..n_max, with errors when ``ref`` is given.

    With ``ctx=None`` the precision follows the required_digits rule for
    ``n_max``.  An explicit coarser context is allowed (a warning is
    issued) so cancellation failure can be demonstrated deliberately.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    if ctx is None:
        ctx = context_for_order(n_max)
    x = _check_point(x, ctx)
    target = None if ref is None else ctx.mpf(ref(x))
    entries = []
    for n in range(1, n_max + 1):
        value = stehfest_approx(F, x, n, ctx)
        err = None if target is None else abs(value - target)
        entries.append(ReportEntry(n, value, err))
    return InversionReport(x, tuple(entries), ctx.digits, tuple(flags))


def expansion_probe(F, x, k_range, ref, ctx: PrecisionContext, rel_tol=0.05):
    """Empirical leading error coefficient of the Gaver functionals.

    Fits ``k (gaver_k(x) - ref)`` against ``b1 + b2/k`` over ``k_range``
    (at least 4 values) and returns the fitted limit ``b1``.  Diagnostic
    only: the caller asserts smoothness of the original at ``x`` and
    supplies the reference value.

    Raises
    ------
    ProbeError
        If the fit residual exceeds ``rel_tol * |b1|`` (plus a small
        absolute floor), which signals the 1/k expansion is not visible
        over the window.
    """
    ks = list(k_range)
    if len(ks) < 4:
        raise DomainError("k_range must span at least 4 values")
    x = _check_point(x, ctx)
    m = ctx.mp
    fref = ctx.mpf(ref)
    cache = _AbscissaCache(F, x, ctx)
    ys = [k * (gaver_approx(F, x, k, ctx, _cache=cache) - fref) for k in ks]
    us = [m.mpf(1) / k for k in ks]
    N = len(ks)
    su = sum(us)
    sy = sum(ys)
    suu = sum(u * u for u in us)
    suy = sum(u * y for u, y in zip(us, ys))
    denom = N * suu - su * su
    b2 = (N * suy - su * sy) / denom
    b1 = (sy - b2 * su) / N
    rms = m.sqrt(sum((y - b1 - b2 * u) ** 2 for u, y in zip(us, ys)) / N)
    floor = m.mpf(10) ** (-(ctx.digits // 2)) * max(m.mpf(1), abs(fref))
    if rms > ctx.mpf(rel_tol) * abs(b1) + floor:
        raise ProbeError(
            f"expansion fit residual {ctx.nstr(rms, 6)} too large for b1 = {ctx.nstr(b1, 6)}"
        )
    return b1


def equivalence_probe(f, x, c, eps, n: int, ctx: PrecisionContext):
    """The oscillatory integral whose vanishing characterizes f_n(x) -> c.

    integral_0^eps |xi(v)|^-n sin(n alpha(v))/alpha(v)
        [f(-x log2(1/2+v)) + f(-x log2(1/2-v)) - 2c] dv

    for ``eps`` in (0, 1/4); ``f`` must be locally integrable near ``x``.
    """
    m = ctx.mp
    x = _check_point(x, ctx)
    c = ctx.mpf(c)
    eps = ctx.mpf(eps)
    if not 0 < eps < m.mpf(1) / 4:
        raise DomainError("eps must lie in (0, 1/4)")
    half = m.mpf(1) / 2
    ln2 = m.ln(2)

    def integrand(v):
        if v == 0:
            return m.mpf(0)
        xa = xi_alpha(v, ctx)
        if xa.alpha == 0:
            osc = m.mpf(n)  # limit of sin(n a)/a as 1 - 4v^2 rounds to 1
        else:
            osc = abs(xa.xi) ** (-n) * m.sin(n * xa.alpha) / xa.alpha
        g = f(-x * m.ln(half + v) / ln2) + f(-x * m.ln(half - v) / ln2) - 2 * c
        return osc * g

    return integrate(integrand, 0, eps, ctx)
