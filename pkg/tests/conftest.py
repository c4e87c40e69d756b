"""Shared strategies.  Property tests run derandomized; explicit random loops use SEED."""

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from typeii.poly import Polynomial, RingDescriptor

SEED = 20261016

settings.register_profile(
    "default", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", derandomize=True, max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

XYZ = RingDescriptor((("x", 1), ("y", 1), ("z", 2)))
COEFFS = st.integers(-5, 5)


def polys(ring: RingDescriptor = XYZ, max_exp: int = 3, max_terms: int = 5):
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(exps, COEFFS, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def homogeneous_polys(ring: RingDescriptor = XYZ, degree: int = 2, max_terms: int = 4):
    monos = []

    def rec(i, left, cur):
        if i == ring.nvars:
            if left == 0:
                monos.append(tuple(cur))
            return
        for e in range(left // ring.weights[i] + 1):
            rec(i + 1, left - e * ring.weights[i], cur + [e])

    rec(0, degree, [])
    return st.dictionaries(st.sampled_from(monos), COEFFS, min_size=1, max_size=max_terms).map(
        lambda d: Polynomial(ring, d)).filter(lambda p: not p.is_zero())
