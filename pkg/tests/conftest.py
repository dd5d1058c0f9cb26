"""Shared helpers: random exact scalars and an independent expansion oracle."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from uqa22.qfield import QRat, qpow


def rational_stream(seed: int):
    """Small nonzero rationals with numerator/denominator up to 7 bits."""
    rng = random.Random(seed)
    while True:
        yield Fraction(rng.randint(1, 127), rng.randint(1, 127)) \
            * rng.choice([1, -1])


def random_monomial(rng: random.Random) -> QRat:
    return qpow(rng.randint(-3, 3), Fraction(rng.choice([1, -1]) * rng.randint(1, 3)))


def brute_expand(fr, rel_depth: int):
    """Naive expansion oracle: explicit geometric series and plain dict
    convolution, with no validity bookkeeping.  Correct for every
    exponent vector whose ratio degree sits at most rel_depth above the
    leading monomial."""
    n = fr.n
    terms = {tuple(fr.monomial): fr.scalar}
    for u, i, v, j, m in fr.factors:
        fac = {}
        if m > 0:
            from math import comb
            for t in range(m + 1):
                vec = [0] * n
                vec[i - 1] += m - t
                vec[j - 1] += t
                fac[tuple(vec)] = u ** (m - t) * v ** t * comb(m, t)
        else:
            from math import comb
            mm = -m
            for t in range(rel_depth + 1):
                vec = [0] * n
                vec[i - 1] = m - t
                vec[j - 1] = t
                fac[tuple(vec)] = (u ** m * (v / u) ** t
                                   * comb(mm - 1 + t, t) * (-1) ** t)
        merged = {}
        for a, ca in terms.items():
            for b, cb in fac.items():
                key = tuple(x + y for x, y in zip(a, b))
                c = ca * cb
                if key in merged:
                    merged[key] = merged[key] + c
                else:
                    merged[key] = c
        terms = {k: c for k, c in merged.items() if not c.is_zero()}
    return terms


@pytest.fixture
def rng():
    return random.Random(20240817)
