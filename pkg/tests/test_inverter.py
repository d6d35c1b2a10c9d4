import warnings
from fractions import Fraction

import pytest

from gsinv import (
    DomainError,
    PrecisionContext,
    ProbeError,
    TransformEvaluationError,
    TransformFn,
    context_for_order,
    corpus,
    equivalence_probe,
    expansion_probe,
    gaver_approx,
    get_pair,
    invert_ladder,
    required_digits,
    stehfest_approx,
    stehfest_via_gaver,
)
from conftest import load_fixture

F_CONST = TransformFn(lambda z: 1 / z, "1/z")
F_RAMP = TransformFn(lambda z: 1 / z**2, "1/z^2")
F_EXP = TransformFn(lambda z: 1 / (z + 1), "1/(z+1)")


def test_gaver_constant_exact(ctx30):
    val = gaver_approx(F_CONST, 1, 1, ctx30)
    assert abs(val - 1) <= 10 * ctx30.eps


def test_gaver_ramp_first_order(ctx30):
    # E[U_1] = 3/2, so the k = 1 functional equals 3/(2 ln 2) at x = 1
    m = ctx30.mp
    val = gaver_approx(F_RAMP, 1, 1, ctx30)
    assert abs(val - ctx30.mpf(Fraction(3, 2)) / m.ln(2)) <= 10 * ctx30.eps


def test_gaver_error_decreasing_in_k():
    ctx = context_for_order(16)
    errs = [abs(gaver_approx(F_RAMP, 1, k, ctx) - 1) for k in range(4, 17)]
    assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))


def test_stehfest_constant_to_working_precision():
    ctx = context_for_order(7)
    val = stehfest_approx(F_CONST, ctx.mpf("2.5"), 7, ctx)
    assert abs(val - 1) <= ctx.mp.mpf(10) ** (-(ctx.digits - ctx.guard))


def test_stehfest_smooth_reference():
    ctx = PrecisionContext(41, 13)
    val = stehfest_approx(F_EXP, 1, 14, ctx)
    assert abs(val - ctx.mp.exp(-1)) <= ctx.mpf("1e-6")


def test_stehfest_jump_midpoint_trend():
    ctx = context_for_order(16)
    Fstep = get_pair("step").F
    errs = [abs(stehfest_approx(Fstep, 1, n, ctx) - ctx.mpf("0.5")) for n in (4, 8, 16)]
    assert errs[2] < errs[1] < errs[0]


def test_two_path_agreement_across_corpus():
    ctx = context_for_order(10)
    tol = ctx.mp.mpf(10) ** (-(ctx.digits - ctx.guard - 2))
    for pair in corpus():
        for x in (ctx.mpf(1) / 2, ctx.mpf(1), ctx.mpf(2)):
            for n in range(1, 11):
                a = stehfest_approx(pair.F, x, n, ctx)
                b = stehfest_via_gaver(pair.F, x, n, ctx)
                assert abs(a - b) <= tol, (pair.name, n, ctx.nstr(abs(a - b), 4))


def test_constant_exactness_invariant():
    ctx = context_for_order(12)
    tol = ctx.mp.mpf(10) ** (-(ctx.digits - ctx.guard))
    for c in (ctx.mpf(1), ctx.mpf(-3), ctx.mpf(Fraction(1, 7))):
        F = TransformFn(lambda z, c=c: c / z, "c/z")
        for x in (ctx.mpf(1) / 2, ctx.mpf(1), ctx.mpf(2)):
            for n in range(1, 13):
                assert abs(stehfest_approx(F, x, n, ctx) - c) <= tol


def test_scale_covariance_bit_exact():
    # with a = 2 every rescaling is a power of two, so the two routes hit
    # bit-identical abscissas: f_n[F(2z)/2](x) == f_n[F](x/2) / 4 exactly
    ctx = context_for_order(6)
    G = TransformFn(lambda z: F_EXP(2 * z) / 2, "F(2z)/2")
    x = ctx.mpf(1)
    for n in (1, 3, 6):
        lhs = stehfest_approx(G, x, n, ctx)
        rhs = stehfest_approx(F_EXP, x / 2, n, ctx) / 4
        assert lhs == rhs


def test_ladder_constant():
    rep = invert_ladder(F_CONST, 1, 5, ref=lambda x: x.context.mpf(1))
    assert [e.n for e in rep.entries] == [1, 2, 3, 4, 5]
    assert rep.digits_used >= required_digits(5)
    for e in rep.entries:
        assert e.abs_error <= 10 ** -(rep.digits_used - 15)


def test_ladder_matches_oracle_fixture():
    fx = load_fixture("smooth_ladder.json")
    ctx = context_for_order(14)
    rep = invert_ladder(F_EXP, 1, 14, ref=lambda x: x.context.exp(-x), ctx=ctx)
    for e in rep.entries:
        oracle = ctx.mpf(fx["errors"][str(e.n)])
        assert abs(e.abs_error - oracle) <= ctx.mpf("1e-9") * max(1, oracle)
    assert rep.entries[13].abs_error * 10**4 <= rep.entries[3].abs_error


def test_ladder_ramp_monotone():
    rep = invert_ladder(F_RAMP, 1, 10, ref=lambda x: x)
    errs = [e.abs_error for e in rep.entries]
    for e1, e2 in zip(errs[1:], errs[2:]):
        assert e2 < e1


def test_ladder_low_digits_warns():
    ctx = PrecisionContext(20)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        invert_ladder(F_EXP, 1, 10, ctx=ctx)
    assert any("required_digits" in str(w.message) for w in caught)


def test_transform_failure_carries_abscissa(ctx30):
    def bad(z):
        raise ValueError("boom")

    with pytest.raises(TransformEvaluationError) as err:
        stehfest_approx(TransformFn(bad, "bad"), 1, 2, ctx30)
    assert err.value.z is not None


def test_report_serialization(ctx30):
    rep = invert_ladder(F_CONST, 1, 3, ref=lambda x: x.context.mpf(1), ctx=ctx30)
    doc = rep.to_json_dict(ctx30)
    assert doc["digits"] == 30 and len(doc["entries"]) == 3
    csv_text = rep.to_csv(ctx30)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "n,value,abs_error,digits"
    assert lines[1].startswith("1,1.0")


def test_expansion_probe_constant_is_zero():
    ctx = context_for_order(20)
    b1 = expansion_probe(F_CONST, 1, range(8, 21), ctx.mpf(1), ctx)
    assert abs(b1) <= ctx.mpf(10) ** (-(ctx.digits // 2))


def test_expansion_probe_window_stability():
    # the fitted leading error coefficient is stable to 2 significant
    # digits when the fit window shifts
    ctx = PrecisionContext(required_digits(36), 30)
    cases = [
        (F_RAMP, ctx.mpf(1)),
        (F_EXP, ctx.mp.exp(-1)),
    ]
    for F, ref in cases:
        b_main = expansion_probe(F, 1, range(8, 33), ref, ctx)
        b_shift = expansion_probe(F, 1, range(12, 37), ref, ctx)
        b_short = expansion_probe(F, 1, range(8, 25), ref, ctx)
        assert b_main != 0
        for other in (b_shift, b_short):
            assert abs(other / b_main - 1) <= ctx.mpf("0.01")


def test_expansion_probe_rejects_bad_reference():
    ctx = PrecisionContext(required_digits(32), 30)
    with pytest.raises(ProbeError):
        expansion_probe(F_RAMP, 1, range(8, 33), ctx.mpf("0.35"), ctx)
    with pytest.raises(DomainError):
        expansion_probe(F_RAMP, 1, range(8, 11), ctx.mpf(1), ctx)


def test_equivalence_probe_constant_zero(ctx30):
    f = lambda t: t.context.mpf("2.5")
    for n in (5, 20):
        val = equivalence_probe(f, 1, ctx30.mpf("2.5"), ctx30.mpf("0.2"), n, ctx30)
        assert abs(val) <= 10 * ctx30.eps


def test_equivalence_probe_exponential_decreases(ctx30):
    fx = load_fixture("equivalence_probe.json")
    m = ctx30.mp
    f = lambda t: t.context.exp(-t)
    vals = {}
    for n in (20, 40, 80):
        vals[n] = equivalence_probe(f, 1, m.exp(-1), m.mpf("0.2"), n, ctx30)
        oracle = ctx30.mpf(fx["values"][str(n)])
        assert abs(vals[n] - oracle) <= m.mpf("1e-9")
    assert abs(vals[80]) < abs(vals[40]) < abs(vals[20])


def test_equivalence_probe_step_vanishes(ctx30):
    step = get_pair("step")
    m = ctx30.mp
    for n in (20, 80):
        val = equivalence_probe(step.f_ref, 1, m.mpf(1) / 2, m.mpf("0.2"), n, ctx30)
        assert abs(val) <= m.mpf(10) ** (-(ctx30.digits - ctx30.guard))


def test_equivalence_probe_domain(ctx30):
    with pytest.raises(DomainError):
        equivalence_probe(lambda t: t, 1, 0, ctx30.mpf("0.3"), 5, ctx30)


def test_thread_safety_across_contexts():
    # operations are pure given an explicit context; concurrent ladders on
    # distinct contexts must reproduce the serial results exactly
    from concurrent.futures import ThreadPoolExecutor

    jobs = []
    for digits in (25, 35):
        ctx = PrecisionContext(digits)
        for pair in corpus()[:4]:
            jobs.append((pair.F, ctx))
    serial = [stehfest_approx(F, 1, 6, ctx) for F, ctx in jobs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        threaded = list(pool.map(lambda j: stehfest_approx(j[0], 1, 6, j[1]), jobs))
    assert serial == threaded
