import random

import pytest

from gsinv import (
    DomainError,
    PrecisionContext,
    QuadratureError,
    context_for_order,
    guard_for_order,
    integrate,
    required_digits,
)


def test_required_digits_examples():
    assert required_digits(1) == 13
    assert required_digits(10) == 32
    assert required_digits(14) == 41


def test_required_digits_exact_ceiling():
    # 2.2 * 5 = 11 exactly; a floating ceil would report 12
    assert required_digits(5) == 21
    assert required_digits(15) == 43


def test_required_digits_rejects_bad_order():
    with pytest.raises(DomainError):
        required_digits(0)


def test_context_invariants():
    with pytest.raises(DomainError):
        PrecisionContext(14)
    with pytest.raises(DomainError):
        PrecisionContext(20, guard=4)
    ctx = PrecisionContext(20, guard=5)
    assert ctx.dps == 25
    assert ctx.eps == ctx.mp.mpf(10) ** -20
    finer = ctx.with_digits(40)
    assert finer.digits == 40 and finer.guard == 5
    assert finer.eps == finer.mp.mpf(10) ** -40


def test_context_for_order_covers_required():
    for n in (1, 5, 12, 18):
        ctx = context_for_order(n)
        assert ctx.digits == max(15, required_digits(n))
        assert ctx.guard == guard_for_order(n) >= 5


def test_integrate_exponential(ctx30):
    val = integrate(lambda u: ctx30.mp.exp(-u), 0, ctx30.mp.inf, ctx30)
    assert abs(val - 1) <= ctx30.eps


def test_integrate_gaver_kernel_mass(ctx30):
    # p_1(u) = 2 e^-u (1 - e^-u) has unit mass on [0, inf)
    m = ctx30.mp
    val = integrate(lambda u: 2 * m.exp(-u) * (1 - m.exp(-u)), 0, m.inf, ctx30)
    assert abs(val - 1) <= ctx30.eps


def _si_series(x, ctx):
    # independent oracle: Si(x) = sum (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    m = ctx.mp
    acc = m.mpf(0)
    term = m.mpf(x)
    k = 0
    while abs(term) > m.mpf(10) ** (-ctx.dps - 5):
        acc += term / (2 * k + 1)
        k += 1
        term = term * (-(m.mpf(x) ** 2)) / ((2 * k) * (2 * k + 1))
    return acc


def test_integrate_sine_integral(ctx30):
    m = ctx30.mp
    val = integrate(lambda u: m.sin(u) / u, 0, m.pi, ctx30)
    oracle = _si_series(m.pi, ctx30)
    assert str(oracle).startswith("1.85193705198")
    assert abs(val - oracle) <= 10 * ctx30.eps


def test_integrate_linearity(ctx30):
    m = ctx30.mp
    rng = random.Random(7)
    f = lambda u: m.exp(-u)
    g = lambda u: m.sin(u)
    for _ in range(3):
        alpha = ctx30.mpf(rng.uniform(-3, 3))
        beta = ctx30.mpf(rng.uniform(-3, 3))
        combined = integrate(lambda u: alpha * f(u) + beta * g(u), 0, 2, ctx30)
        separate = alpha * integrate(f, 0, 2, ctx30) + beta * integrate(g, 0, 2, ctx30)
        assert abs(combined - separate) <= 2 * ctx30.eps * max(1, abs(combined))


def test_integrate_precision_consistency():
    coarse = PrecisionContext(20)
    fine = PrecisionContext(40)
    m = fine.mp
    f = lambda u: m.exp(-(u**2))
    a = integrate(f, 0, m.inf, coarse)
    b = integrate(f, 0, m.inf, fine)
    assert abs(fine.mpf(a) - b) <= coarse.eps


def test_integrate_endpoint_singularity(ctx30):
    m = ctx30.mp
    val = integrate(lambda x: 1 / m.sqrt(x), 0, 1, ctx30)
    assert abs(val - 2) <= ctx30.eps


def test_integrate_semi_infinite_with_singularity(ctx30):
    m = ctx30.mp
    val = integrate(lambda x: m.exp(-2 * x) / m.sqrt(x), 0, m.inf, ctx30)
    assert abs(val - m.sqrt(m.pi / 2)) <= 10 * ctx30.eps


def test_integrate_orientation_and_empty(ctx30):
    m = ctx30.mp
    assert integrate(lambda x: x, 1, 1, ctx30) == 0
    forward = integrate(lambda x: x**2, 0, 2, ctx30)
    backward = integrate(lambda x: x**2, 2, 0, ctx30)
    assert abs(forward + backward) <= ctx30.eps


def test_quadrature_error_carries_estimates(ctx30):
    m = ctx30.mp
    with pytest.raises(QuadratureError) as err:
        integrate(lambda u: m.sin(u) / u, 0, m.pi, ctx30, max_level=1)
    assert err.value.last_estimates is not None
    assert len(err.value.last_estimates) == 2
