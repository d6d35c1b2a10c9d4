"""Exact-rational Gaver-Stehfest coefficients, weights and kernel.

All coefficient arithmetic is exact (big-integer rationals); conversion
to floating point happens only at evaluation time.  The alternating signs
make floating coefficient generation the dominant error source, so no
floating shortcut is offered.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import DomainError
from .numerics import PrecisionContext

__all__ = [
    "MAX_ORDER",
    "StehfestWeights",
    "GaverStehfestCoeffs",
    "stehfest_weights",
    "vandermonde_check",
    "gaver_stehfest_coeffs",
    "coeffs_from_weights",
    "gaver_kernel",
    "coeffs_to_json",
    "coeffs_to_csv",
]

# Exact integers beyond this order grow without practical inversion
# benefit; pass max_order explicitly to override.
MAX_ORDER = 64


@dataclass(frozen=True)
class StehfestWeights:
    """Acceleration weights c_k(n), k = 1..n, exact rationals."""

    n: int
    c: tuple[Fraction, ...]


@dataclass(frozen=True)
class GaverStehfestCoeffs:
    """Collapsed summation coefficients a_k(n), k = 1..2n, exact rationals."""

    n: int
    a: tuple[Fraction, ...]


def _check_order(n: int, max_order: int):
    if not 1 <= n <= max_order:
        raise DomainError(f"order must be in [1, {max_order}], got {n}")


@lru_cache(maxsize=None)
def stehfest_weights(n: int, max_order: int = MAX_ORDER) -> StehfestWeights:
    """Weights c_k(n) = (-1)^(n+k) k^n / (k! (n-k)!).

    They satisfy the Vandermonde conditions: sum_k c_k k^-j equals 1 for
    j = 0 and 0 for j = 1..n-1, exactly in rational arithmetic.
    """
    _check_order(n, max_order)
    c = tuple(
        (-1) ** (n + k) * Fraction(k**n, factorial(k) * factorial(n - k))
        for k in range(1, n + 1)
    )
    return StehfestWeights(n, c)


def vandermonde_check(w: StehfestWeights) -> bool:
    """True iff sum_k c_k k^-j = delta_{j,0} exactly for j = 0..n-1."""
    for j in range(w.n):
        total = sum(ck * Fraction(1, k**j) for k, ck in enumerate(w.c, start=1))
        if total != (1 if j == 0 else 0):
            return False
    return True


@lru_cache(maxsize=None)
def gaver_stehfest_coeffs(n: int, max_order: int = MAX_ORDER) -> GaverStehfestCoeffs:
    """Coefficients a_k(n), k = 1..2n, from the closed double sum.

    a_k(n) = (-1)^(n+k)/n! * sum_{j=floor((k+1)/2)}^{min(k,n)}
             j^(n+1) C(n,j) C(2j,j) C(j,k-j)

    The floor bracket is integer floor division; the construction is
    cross-checked against :func:`coeffs_from_weights` in the test suite.
    """
    _check_order(n, max_order)
    nfact = factorial(n)
    a = []
    for k in range(1, 2 * n + 1):
        s = 0
        for j in range((k + 1) // 2, min(k, n) + 1):
            s += j ** (n + 1) * comb(n, j) * comb(2 * j, j) * comb(j, k - j)
        a.append((-1) ** (n + k) * Fraction(s, nfact))
    return GaverStehfestCoeffs(n, tuple(a))


def coeffs_from_weights(n: int, max_order: int = MAX_ORDER) -> GaverStehfestCoeffs:
    """Alternative construction: expand the accelerated combination.

    Collapses sum_k c_k(n) * [row-k finite difference] into coefficients of
    F(m ln2 / x), m = 1..2n.  Must reproduce :func:`gaver_stehfest_coeffs`
    exactly; kept separate as the independent route for that identity.
    """
    _check_order(n, max_order)
    w = stehfest_weights(n, max_order)
    a = [Fraction(0)] * (2 * n)
    for k in range(1, n + 1):
        row = Fraction(factorial(2 * k), factorial(k) * factorial(k - 1))
        for i in range(k + 1):
            m = k + i
            a[m - 1] += w.c[k - 1] * row * comb(k, i) * (-1) ** i
    return GaverStehfestCoeffs(n, tuple(a))


def gaver_kernel(k: int, u, ctx: PrecisionContext):
    """Kernel p_k(u) = (2k)!/(k!(k-1)!) (1-e^-u)^k e^-ku, u >= 0.

    Nonnegative with unit mass on [0, inf); the mass and mean are probed
    by quadrature in the test suite.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    m = ctx.mp
    u = ctx.mpf(u)
    if u < 0:
        raise DomainError("kernel argument must be >= 0")
    pre = Fraction(factorial(2 * k), factorial(k) * factorial(k - 1))
    eu = m.exp(-u)
    return ctx.mpf(pre) * (1 - eu) ** k * eu**k


# ---------------------------------------------------------------------
# exact-string export
# ---------------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def coeffs_to_json(n: int, which: str = "both") -> str:
    """JSON document with a_k(n) and/or c_k(n) as exact "p/q" strings."""
    doc: dict = {"n": n}
    if which in ("a", "both"):
        doc["a"] = [_frac_str(q) for q in gaver_stehfest_coeffs(n).a]
    if which in ("c", "both"):
        doc["c"] = [_frac_str(q) for q in stehfest_weights(n).c]
    return json.dumps(doc, indent=2)


def coeffs_to_csv(n: int, which: str = "both") -> str:
    """CSV table (columns: k, a_k, c_k) with exact "p/q" strings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = ["k"]
    if which in ("a", "both"):
        cols.append("a_k")
    if which in ("c", "both"):
        cols.append("c_k")
    writer.writerow(cols)
    a = gaver_stehfest_coeffs(n).a if which in ("a", "both") else None
    c = stehfest_weights(n).c if which in ("c", "both") else None
    for k in range(1, 2 * n + 1):
        row = [str(k)]
        if a is not None:
            row.append(_frac_str(a[k - 1]))
        if c is not None:
            row.append(_frac_str(c[k - 1]) if k <= n else "")
        writer.writerow(row)
    return buf.getvalue()
