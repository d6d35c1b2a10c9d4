#!/usr/bin/env python3
"""Regenerate the oracle fixtures under tests/fixtures/.

Deliberately independent of the package: only mpmath and exact rational
arithmetic, with the summation coefficients taken straight from their
closed double-sum definition.  Run from the repository root:

    python3 tools/make_fixtures.py
"""
import json
import pathlib
from fractions import Fraction
from math import comb, factorial

import mpmath
from mpmath import mp, mpf

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"
ORACLE_DPS = 100


def summation_coeffs(n):
    out = []
    for k in range(1, 2 * n + 1):
        s = Fraction(0)
        for j in range((k + 1) // 2, min(k, n) + 1):
            s += Fraction(j ** (n + 1)) * comb(n, j) * comb(2 * j, j) * comb(j, k - j)
        out.append((-1) ** (n + k) * s / factorial(n))
    return out


def approximant(F, x, n):
    ln2 = mp.ln(2)
    acc = mpf(0)
    for k, a in enumerate(summation_coeffs(n), start=1):
        acc += mpf(a.numerator) / mpf(a.denominator) * F(k * ln2 / x)
    return ln2 / x * acc


def ladder_errors(F, x, ref, n_max):
    return {
        str(n): mp.nstr(abs(approximant(F, x, n) - ref), 20)
        for n in range(1, n_max + 1)
    }


def equivalence_probe_exp(n, eps):
    # oscillatory probe for f = exp(-t) at x = 1, c = 1/e
    c = mp.e ** -1

    def integrand(v):
        if v == 0:
            return mpf(0)
        xi = mpmath.lambertw(-1 / (mp.e * (1 - 4 * v**2)))
        alpha = xi.imag
        g = mp.e ** (mp.log(mpf(1) / 2 + v, 2)) + mp.e ** (mp.log(mpf(1) / 2 - v, 2)) - 2 * c
        return abs(xi) ** (-n) * mp.sin(n * alpha) / alpha * g

    return mpmath.quad(integrand, [0, eps])


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    mp.dps = ORACLE_DPS

    smooth = {
        "transform": "1/(z+1)",
        "x": "1",
        "reference": "exp(-1)",
        "oracle_digits": ORACLE_DPS,
        "errors": ladder_errors(lambda z: 1 / (z + 1), mpf(1), mp.e ** -1, 14),
    }
    (OUT / "smooth_ladder.json").write_text(json.dumps(smooth, indent=2) + "\n")

    step = {
        "transform": "exp(-z)/z",
        "x": "1",
        "reference": "1/2",
        "oracle_digits": ORACLE_DPS,
        "errors": ladder_errors(lambda z: mp.e ** (-z) / z, mpf(1), mpf(1) / 2, 18),
    }
    (OUT / "step_ladder.json").write_text(json.dumps(step, indent=2) + "\n")

    mp.dps = 40
    probe = {
        "pair": "exponential",
        "x": "1",
        "c": "exp(-1)",
        "eps": "0.2",
        "oracle_digits": 40,
        "values": {
            str(n): mp.nstr(equivalence_probe_exp(n, mpf("0.2")), 12)
            for n in (20, 40, 80)
        },
    }
    (OUT / "equivalence_probe.json").write_text(json.dumps(probe, indent=2) + "\n")
    print(f"fixtures written to {OUT}")


if __name__ == "__main__":
    main()
