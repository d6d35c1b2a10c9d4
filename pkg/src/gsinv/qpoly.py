"""The polynomial kernel q_n(v), its generating function and asymptotics.

Everything structural (coefficients, generating-function identity,
branch-expansion coefficients) is exact rational; floating point enters
only when evaluating at a point or summing a series numerically.  The
asymptotic checks compare exact values of q_n against closed forms built
from the Lambert W branch structure.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import series as fps
from .errors import DomainError, PrecisionError, ProbeError
from .inverter import stehfest_approx
from .lambertw import branch_series, lambert_w0, w_of_v, xi_alpha
from .numerics import PrecisionContext, integrate

__all__ = [
    "PolyQ",
    "SeriesG",
    "SeriesH",
    "JumpFormCheck",
    "DecayFit",
    "qn_coeffs",
    "qn_eval",
    "series_g",
    "series_h",
    "g_value",
    "genfun_identity_check",
    "g_singular_remainder",
    "hz_branch_check",
    "qn_asymptotic",
    "qn_at_one_asymptotic",
    "qn_jump_form_check",
    "decay_bound_probe",
    "integral_representation_check",
]


@dataclass(frozen=True)
class PolyQ:
    """q_n(v) = sum_{k=1}^n coeffs[k-1] v^k; no constant term."""

    n: int
    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class SeriesG:
    """Exact leading coefficients of G(z); converges for |z| < 1/e."""

    N: int
    g: tuple[Fraction, ...]  # g[n] multiplies z^n, g[0] = 0


@dataclass(frozen=True)
class SeriesH:
    """Exact leading coefficients of H(z) = -(z d/dz)^2 W(z)."""

    N: int
    h: tuple[Fraction, ...]


@dataclass(frozen=True)
class JumpFormCheck:
    """Exact q_n(1-4v^2) against the oscillatory closed form."""

    difference: object
    decay: object  # |xi(v)|^-n, the scale of the admissible error
    q_value: object
    form_value: object


@dataclass(frozen=True)
class DecayFit:
    """Fitted envelope max_v |q_n(v)|/v ~ C b^-n."""

    C: object
    b: object
    residual: object  # multiplicative rms misfit of the envelope points
    ns: tuple[int, ...]
    ratios: tuple  # the per-n maxima that were fitted


def _poch_half(k: int) -> Fraction:
    # (1/2)_k = (2k)! / (4^k k!)
    return Fraction(factorial(2 * k), 4**k * factorial(k))


@lru_cache(maxsize=None)
def qn_coeffs(n: int) -> PolyQ:
    """Exact coefficients of q_n: (-1)^(n+k) k^(n+1) (1/2)_k / ((n-k)! (k!)^2)."""
    if not 1 <= n <= 200:
        raise DomainError(f"order must be in [1, 200], got {n}")
    coeffs = tuple(
        (-1) ** (n + k)
        * Fraction(k ** (n + 1))
        * _poch_half(k)
        / (factorial(n - k) * factorial(k) ** 2)
        for k in range(1, n + 1)
    )
    return PolyQ(n, coeffs)


def qn_exact(n: int, v: Fraction) -> Fraction:
    """q_n at a rational point, exactly."""
    acc = Fraction(0)
    for c in reversed(qn_coeffs(n).coeffs):
        acc = (acc + c) * v
    return acc


@lru_cache(maxsize=64)
def _boosted(digits: int, guard: int) -> PrecisionContext:
    return PrecisionContext(digits, guard)


def qn_eval(n: int, v, ctx: PrecisionContext):
    """Evaluate q_n(v) for v in [0, 1] at working precision.

    Rational ``v`` routes through exact arithmetic.  Floating ``v`` uses
    Horner at an internally boosted precision: the alternating terms peak
    near e^n, so about 0.44 n extra digits are consumed by cancellation.
    """
    if isinstance(v, (Fraction, int)):
        return ctx.mpf(qn_exact(n, Fraction(v)))
    boost = ctx.with_digits(ctx.digits + (45 * n + 99) // 100 + 10) if n > 1 else ctx
    work = _boosted(boost.digits, boost.guard)
    vv = work.mpf(v)
    acc = work.mp.mpf(0)
    for c in reversed(qn_coeffs(n).coeffs):
        acc = (acc + work.mpf(c)) * vv
    return ctx.mpf(acc)


# ---------------------------------------------------------------------
# the series G and H
# ---------------------------------------------------------------------

def _g_coeff(n: int) -> Fraction:
    return (-1) ** n * _poch_half(n) * Fraction(n ** (n + 1)) / factorial(n) ** 2


def _h_coeff(n: int) -> Fraction:
    return (-1) ** n * Fraction(n ** (n + 1), factorial(n))


def series_g(N: int) -> SeriesG:
    return SeriesG(N, tuple(_g_coeff(n) if n else Fraction(0) for n in range(N + 1)))


def series_h(N: int) -> SeriesH:
    return SeriesH(N, tuple(_h_coeff(n) if n else Fraction(0) for n in range(N + 1)))


_MAX_SERIES_TERMS = 5_000_000


def _g_series_sum(z, ctx: PrecisionContext):
    # Valid for -1/e < z < 0, where every term is positive.  Near the
    # convergence radius the summation switches to precision 4*digits;
    # the term ratio is (-z)(n - 1/2)/(n - 1) * (1 + 1/(n-1))^(n-1).
    near_radius = -z * ctx.mp.e > ctx.mpf("0.9")
    dps = max(ctx.dps, 4 * ctx.digits) if near_radius else ctx.dps
    work = _boosted(dps - 5, 5)
    m = work.mp
    zz = m.mpf(z)
    acc = m.mpf(0)
    term = -zz / 2
    reltol = m.mpf(10) ** (-(ctx.digits + 10))
    n = 1
    while True:
        acc += term
        if term <= reltol * acc:
            return acc
        n += 1
        if n > _MAX_SERIES_TERMS:
            raise PrecisionError(
                f"G series needs more than {_MAX_SERIES_TERMS} terms at z = {ctx.nstr(z)}"
            )
        term *= (-zz) * (n - m.mpf(1) / 2) / (n - 1) * (1 + m.mpf(1) / (n - 1)) ** (n - 1)


@lru_cache(maxsize=8)
def _h_laurent(N: int) -> tuple[Fraction, ...]:
    # H = p^-3 (1 - p S(p)) S(p)^-3 with S = (1 + W)/p from the branch
    # series; entry i is the coefficient of p^(i-3).
    mu = branch_series(N + 4).mu
    S = [mu[i + 1] for i in range(N + 4)]
    Sinv = fps.inverse_trunc(S, N + 3)
    S3inv = fps.mul_trunc(fps.mul_trunc(Sinv, Sinv, N + 3), Sinv, N + 3)
    one_minus_pS = [Fraction(1)] + [-S[i - 1] for i in range(1, N + 4)]
    return tuple(fps.mul_trunc(one_minus_pS, S3inv, N + 3)[: N + 4])


def _htilde(y, work: PrecisionContext):
    # h~(y) = H(y) - p^-3 + (11/24) p^-1, bounded through the branch point
    m = work.mp
    ez1 = 1 + m.e * y
    p = m.sqrt(2 * ez1)
    if p < m.mpf("0.3"):
        # Laurent tail: no cancellation for small p
        N = int(1.5 * work.dps) + 8
        cs = _h_laurent(N)
        acc = m.mpf(0)
        ppow = m.mpf(1)
        for i in range(3, len(cs)):
            acc += work.mpf(cs[i]) * ppow
            ppow *= p
        return acc
    w = lambert_w0(m.mpc(y), work)
    H = (-w / (1 + w) ** 3).real
    return H - p ** (-3) + m.mpf(11) / 24 / p


def _g_continuation(z, work: PrecisionContext):
    # G via the paper's decomposition: the two singular pieces integrate
    # to complete elliptic integrals, the bounded piece by quadrature.
    m = work.mp
    mm = -m.e * m.mpf(z)
    two_over_pi = 2 / m.pi
    sing3 = 2 ** m.mpf("-1.5") * two_over_pi * m.ellipe(mm) / (1 - mm)
    sing1 = m.mpf(11) / 24 * 2 ** m.mpf("-0.5") * two_over_pi * m.ellipk(mm)
    zz = m.mpf(z)
    bounded = two_over_pi * integrate(
        lambda t: _htilde(zz * m.sin(t) ** 2, work), 0, m.pi / 2, work
    )
    return sing3 - sing1 + bounded


def g_value(z, ctx: PrecisionContext):
    """G(z) for real z in (-1/e, 0).

    Sums the defining series while ``|ez| <= 1 - 1e-3``; closer to the
    radius it switches to the analytic continuation (elliptic integrals
    plus a bounded remainder), which the tests pin against the series on
    the overlap.
    """
    m = ctx.mp
    z = ctx.mpf(z)
    if not (-m.exp(-1) < z < 0):
        raise DomainError("g_value requires -1/e < z < 0")
    ez1 = 1 + m.e * z
    if ez1 >= m.mpf("1e-3"):
        return ctx.mpf(_g_series_sum(z, ctx))
    extra = int(-m.log10(ez1)) + 8
    work = _boosted(ctx.digits + extra, ctx.guard)
    return ctx.mpf(_g_continuation(z, work))


def g_singular_remainder(z, ctx: PrecisionContext):
    """G(z) minus its singular part near z = -1/e.

    Returns ``G(z) - (1/(sqrt(2) pi)) [(1+ez)^-1 + (5/24) ln(1+ez)]`` for
    real ``z`` in ``(-1/e, -1/e + 0.02]``; the remainder extends
    continuously to the branch point, which the tests probe via Cauchy
    differences along ``z_j -> -1/e``.
    """
    m = ctx.mp
    z = ctx.mpf(z)
    ez1_coarse = 1 + m.e * z
    if not (0 < ez1_coarse <= m.mpf("0.02") * m.e + ctx.eps):
        raise DomainError("z must lie in (-1/e, -1/e + 0.02]")
    extra = int(-m.log10(ez1_coarse)) + 8
    work = _boosted(ctx.digits + extra, ctx.guard)
    mw = work.mp
    zz = mw.mpf(z)
    ez1 = 1 + mw.e * zz
    if ez1 >= mw.mpf("1e-3"):
        G = _g_series_sum(zz, work)
    else:
        G = _g_continuation(zz, work)
    sing = (1 / ez1 + mw.mpf(5) / 24 * mw.ln(ez1)) / (mw.sqrt(2) * mw.pi)
    return ctx.mpf(G - sing)


def hz_branch_check(z, ctx: PrecisionContext, laurent_terms: int = 6):
    """|H summed from its series - branch expansion truncated at p^N|.

    The leading expansion coefficients (1, -11/24, -4/135, -1/1152) are
    fixed; higher ones come from the exact branch-series algebra.  The
    series side converges slowly near the branch point, so its relative
    resolution is capped around 1e-16; requires real ``p(z)`` with
    ``|p| <= 0.5``.
    """
    m = ctx.mp
    z = ctx.mpf(z)
    ez1 = 1 + m.e * z
    if ez1 <= 0:
        raise DomainError("p(z) would be imaginary: need z > -1/e")
    p = m.sqrt(2 * ez1)
    if p > m.mpf("0.5"):
        raise DomainError(f"|p(z)| = {ctx.nstr(p, 6)} exceeds 0.5")
    # series side
    acc = m.mpf(0)
    term = -z
    reltol = m.mpf("1e-18")
    n = 1
    while True:
        acc += term
        if term <= reltol * acc:
            break
        n += 1
        if n > _MAX_SERIES_TERMS:
            raise PrecisionError("H series did not converge")
        term *= (-z) * (1 + m.mpf(1) / (n - 1)) ** n
    # branch expansion side
    cs = _h_laurent(laurent_terms)
    lval = m.mpf(0)
    for i in range(0, laurent_terms + 4):
        lval += ctx.mpf(cs[i]) * p ** (i - 3)
    return abs(acc - lval)


# ---------------------------------------------------------------------
# generating function
# ---------------------------------------------------------------------

def _genfun_matches(qvals, v: Fraction, n_max: int) -> bool:
    # compose G(v t e^t) as a formal series in t; coefficient of t^n must
    # equal (-1)^n * q_n(v) exactly
    inner = [Fraction(0)] + [v / factorial(k - 1) for k in range(1, n_max + 1)]
    composed = fps.compose_outer(_g_coeff, inner, n_max)
    return all(composed[n] == (-1) ** n * qvals[n - 1] for n in range(1, n_max + 1))


def genfun_identity_check(n_max: int, v) -> bool:
    """Exact check of G(v t e^t) = sum q_n(v) (-1)^n t^n through t^n_max.

    ``v`` must be rational in [0, 1]; the composition uses exact rational
    arithmetic throughout, so the result is a strict equality test.
    """
    v = Fraction(v)
    if not 0 <= v <= 1:
        raise DomainError("v must lie in [0, 1]")
    if n_max > 30:
        raise DomainError("formal-series cost: n_max capped at 30")
    qvals = [qn_exact(n, v) for n in range(1, n_max + 1)]
    return _genfun_matches(qvals, v, n_max)


# ---------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------

def _sqrt2_over_pi(m):
    return m.sqrt(2) / m.pi


def qn_asymptotic(n: int, v, ctx: PrecisionContext, extended: bool = False):
    """Leading asymptotic of q_n(v) for v in [1/2, 1).

    Plain mode: (-1)^n (sqrt(2)/pi) Re[w^-n / (1+w)], w = W(-1/(ev)).
    Extended mode adds the refined corrections
    ``- 5/(24n) w^-n + 25/(1152 n^2) (1+w) w^-n`` inside Re[.].

    ``v = 1`` is rejected: w(1) = -1 is a double pole of the integrand
    that produced this form; use :func:`qn_at_one_asymptotic` there.
    """
    m = ctx.mp
    v = ctx.mpf(v)
    if not m.mpf(1) / 2 <= v < 1:
        raise DomainError("v must lie in [1/2, 1); v = 1 has its own formula")
    if n < 1:
        raise DomainError("n must be >= 1")
    w = w_of_v(v, ctx)
    inner = w ** (-n) / (1 + w)
    if extended:
        inner += -m.mpf(5) / (24 * n) * w ** (-n) + m.mpf(25) / (1152 * n**2) * (1 + w) * w ** (-n)
    return (-1) ** n * _sqrt2_over_pi(m) * inner.real


def qn_at_one_asymptotic(n: int, ctx: PrecisionContext):
    """(sqrt(2)/pi) (n + 1/3 - 5/(24n)); residual is O(n^-3)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    m = ctx.mp
    return _sqrt2_over_pi(m) * (n + m.mpf(1) / 3 - m.mpf(5) / (24 * n))


def qn_jump_form_check(n: int, v, ctx: PrecisionContext) -> JumpFormCheck:
    """q_n(1-4v^2) against (sqrt(2)/pi) |xi|^-n sin(n alpha)/alpha.

    The admissible error of the closed form is O(xi^-n) with an O(1)
    constant (the dropped term oscillates like cos(n alpha)/3), so the
    returned ``difference`` should be compared against ``C * decay`` with
    a fitted, n-stable C rather than against the form value pointwise.
    """
    m = ctx.mp
    if isinstance(v, (Fraction, int)):
        vfrac = Fraction(v)
        if not 0 < vfrac <= Fraction(1, 4):
            raise DomainError("v must lie in (0, 1/4]")
        q = ctx.mpf(qn_exact(n, 1 - 4 * vfrac * vfrac))
        vv = ctx.mpf(vfrac)
    else:
        vv = ctx.mpf(v)
        if not 0 < vv <= m.mpf(1) / 4:
            raise DomainError("v must lie in (0, 1/4]")
        q = qn_eval(n, 1 - 4 * vv * vv, ctx)
    xa = xi_alpha(vv, ctx)
    decay = abs(xa.xi) ** (-n)
    form = _sqrt2_over_pi(m) * decay * m.sin(n * xa.alpha) / xa.alpha
    return JumpFormCheck(abs(q - form), decay, q, form)


def decay_bound_probe(epsilon, n_range, ctx: PrecisionContext, grid_points: int = 121) -> DecayFit:
    """Fit max over v in [0, 1-eps] of |q_n(v)|/v against C b^-n.

    The per-n maxima oscillate around their geometric envelope (the
    nearest sin(n alpha) peak moves relative to the grid edge), so the
    fit runs through the local maxima of the sequence: those lie on the
    envelope that the decay lemma actually bounds.  A least-squares fit
    through all points would report a misleading ~15-20% residual.

    Returns
    -------
    DecayFit
        Fitted C and b (check ``b > 1``), the multiplicative rms misfit
        of the envelope points, and the raw sequence.
    """
    m = ctx.mp
    eps = ctx.mpf(epsilon)
    if not 0 < eps < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    ns = [int(n) for n in n_range]
    if len(ns) < 4:
        raise ProbeError("need at least 4 orders to fit the decay bound")
    hi = 1 - eps
    ratios = []
    for n in ns:
        best = m.mpf(0)
        for i in range(1, grid_points + 1):
            v = hi * m.mpf(i) / grid_points
            r = abs(qn_eval(n, v, ctx)) / v
            if r > best:
                best = r
        ratios.append(best)
    logs = [m.ln(r) for r in ratios]
    peaks = [
        i
        for i in range(len(ns))
        if (i == 0 or logs[i] >= logs[i - 1]) and (i == len(ns) - 1 or logs[i] >= logs[i + 1])
    ]
    if len(peaks) < 2:
        raise ProbeError("degenerate fit: fewer than two envelope points")
    N = len(peaks)
    sx = sum(m.mpf(ns[i]) for i in peaks)
    sy = sum(logs[i] for i in peaks)
    sxx = sum(m.mpf(ns[i]) ** 2 for i in peaks)
    sxy = sum(ns[i] * logs[i] for i in peaks)
    denom = N * sxx - sx * sx
    if denom == 0:
        raise ProbeError("degenerate fit: no spread in n")
    slope = (N * sxy - sx * sy) / denom
    inter = (sy - slope * sx) / N
    rms = m.sqrt(sum((logs[i] - inter - slope * ns[i]) ** 2 for i in peaks) / N)
    return DecayFit(
        C=m.exp(inter),
        b=m.exp(-slope),
        residual=m.exp(rms) - 1,
        ns=tuple(ns),
        ratios=tuple(ratios),
    )


def integral_representation_check(f, F, x, n: int, ctx: PrecisionContext):
    """|integral form of f_n(x) - summation form of f_n(x)|.

    Left side: integral over u in (0, inf) of
    ``q_n(4 e^-u (1 - e^-u)) f(x u / ln 2)``; right side:
    :func:`stehfest_approx` applied to the exact transform ``F`` of ``f``.
    Both sides are computed independently, so the discrepancy bounds the
    combined quadrature and evaluation error.
    """
    m = ctx.mp
    x = ctx.mpf(x)
    ln2 = m.ln(2)
    coeffs = qn_coeffs(n).coeffs

    def integrand(u):
        eu = m.exp(-u)
        arg = 4 * eu * (1 - eu)
        acc = m.mpf(0)
        for c in reversed(coeffs):
            acc = (acc + ctx.mpf(c)) * arg
        return acc * f(x * u / ln2)

    lhs = integrate(integrand, 0, m.inf, ctx)
    rhs = stehfest_approx(F, x, n, ctx)
    return abs(lhs - rhs)
