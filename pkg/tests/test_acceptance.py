"""Acceptance criteria, one printed PASS/FAIL line each.

The lines bypass output capture, so they show up under plain ``pytest`` as
well as scripts/run_acceptance.sh.  Time limits are wall-clock and pinned here.
"""

import random
import time
from contextlib import contextmanager

import pytest

from conftest import SEED, XYZ
from typeii import verify as V
from typeii.groebner import (
    Ideal,
    MonomialOrder,
    buchberger,
    codimension,
    colon,
    divide_with_quotients,
    ideal_equal,
    saturate,
)
from typeii.hilbert import hilbert_series
from typeii.poly import Polynomial, RingDescriptor, SubstitutionMap, apply_substitution
from typeii.specializations import STANDARD
from typeii.unprojection import (
    Parameters,
    a_name,
    assemble_presentation,
    base_ring,
    build_ID,
    build_specialized_CI,
    compute_sections,
    kernel_oracle,
    normalization_map,
)

DESK = [Parameters(1, 2), Parameters(1, 3), Parameters(2, 2)]
LIMIT_CODIM_ID = 60.0
LIMIT_IDENTITIES = 30.0
LIMIT_ORACLE_12 = 600.0
LIMIT_CUSPIDAL = 10.0
PROPERTY_CASES = 40


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, text, limit=None):
        t0 = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - t0
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - t0
            bound = f", limit {limit:.0f}s" if limit is not None else ""
            with capsys.disabled():
                print(f"\n{status} criterion {number}: {text} [{elapsed:.2f}s{bound}]")
    return run


@pytest.fixture(scope="module")
def std12():
    spec = STANDARD[(1, 2)][0]
    data = build_specialized_CI(spec.params, spec.substitution(), label=spec.ident)
    return data, assemble_presentation(data)


def test_c1_codim_of_determinantal_ideal(criterion):
    with criterion(1, "codim I_D = nk for (1,2), (1,3), (2,2)", LIMIT_CODIM_ID):
        for p in DESK:
            assert codimension(build_ID(p, base_ring(p))) == p.n * p.k


def test_c2_identities_and_controls(criterion):
    with criterion(2, "three identities hold for k, n <= 4; mutated controls fail", LIMIT_IDENTITIES):
        good = V.check_lemma_identities(4, 4)
        bad = V.check_lemma_identities(4, 4, mutate=True)
        assert len(good) == len(bad) == 36
        assert all(r.status == V.PASS for r in good)
        assert all(r.status == V.FAIL for r in bad)


def test_c3_oracle_equals_presentation_12(criterion, std12):
    data, pres = std12
    with criterion(3, "kernel oracle = presentation for std12", LIMIT_ORACLE_12):
        assert ideal_equal(kernel_oracle(data), pres.ideal())


def test_c4_codim_and_generator_count_12(criterion, std12):
    _, pres = std12
    with criterion(4, "(1,2) presentation has codim 3 and 5 non-I_X generators"):
        assert codimension(pres.ideal()) == 3
        assert len(pres.non_ix_generators()) == 5


def test_c5_palindromic_numerator_12(criterion, std12):
    _, pres = std12
    with criterion(5, "(1,2) graded Hilbert numerator is palindromic"):
        assert pres.is_graded()
        hs = hilbert_series(pres.ideal()).reduced()
        assert hs.numerator == (1, 3, 6, 8, 6, 3, 1)
        assert hs.is_palindromic()


def test_c6_cuspidal_cubic(criterion):
    with criterion(6, "cuspidal cubic unprojects to the twisted cubic, 1 + 2t not palindromic",
                   LIMIT_CUSPIDAL):
        data = V.cuspidal_cubic_data()
        assert [str(g) for g in compute_sections(data)] == ["x1^2"]
        K = kernel_oracle(data)
        assert ideal_equal(K, V.twisted_cubic(K.ring, "T_0"))
        hs = hilbert_series(K).reduced()
        assert hs.numerator == (1, 2)
        assert not hs.is_palindromic()


def _random_poly(rng, ring, max_exp=2, terms=3):
    return Polynomial(ring, {tuple(rng.randint(0, max_exp) for _ in range(ring.nvars)):
                             rng.randint(-4, 4) for _ in range(terms)})


def _random_form(rng, ring, degree, terms=3):
    monos = [e for e in ((a, b, c) for a in range(degree + 1) for b in range(degree + 1)
                         for c in range(degree + 1))
             if sum(x * w for x, w in zip(e, ring.weights)) == degree]
    return Polynomial(ring, {rng.choice(monos): rng.randint(-4, 4) or 1 for _ in range(terms)})


def test_c7_infrastructure_properties(criterion):
    rng = random.Random(SEED)
    order = MonomialOrder.grevlex(XYZ)
    uv = RingDescriptor.from_names(["u", "v"])
    sigma = SubstitutionMap.from_mapping(XYZ, uv, {"x": "u + v", "y": "u*v - 1", "z": "v^2"})
    with criterion(7, f"property suite (seed {SEED}, {PROPERTY_CASES} cases each)"):
        for _ in range(PROPERTY_CASES):
            gens = [_random_poly(rng, XYZ) for _ in range(3)]
            shuffled = gens[:]
            rng.shuffle(shuffled)
            assert buchberger(gens, order) == buchberger(shuffled, order)

            p = _random_poly(rng, XYZ, 3, 5)
            assert divide_with_quotients(p, gens).reconstruct(gens) == p

            I = Ideal(XYZ, [_random_form(rng, XYZ, 2) for _ in range(2)])
            g = _random_form(rng, XYZ, 1, 2)
            if not g.is_zero():
                C, S = colon(I, g), saturate(I, g)
                assert C.contains_ideal(I) and S.contains_ideal(C)
                assert all(I.contains(h * g) for h in C.generators)

            q = _random_poly(rng, XYZ)
            assert apply_substitution(sigma, p + q) == sigma(p) + sigma(q)
            assert apply_substitution(sigma, p * q) == sigma(p) * sigma(q)
        for k in range(1, 5):
            for n in range(2, 5):
                params = Parameters(k, n)
                R = base_ring(params)
                norm = normalization_map(params, R)
                assert all(norm(u).is_zero() for u in build_ID(params, R).generators)


def test_c8_codim_of_a_variables(criterion):
    with criterion(8, "codim(a) = (k+1)n and (k+1)n - (nk-1) = n+1 for the desk pairs"):
        for p in DESK:
            R = base_ring(p)
            got = codimension(Ideal(R, [R.gen(a_name(i, j)) for i in range(1, p.k + 2)
                                        for j in range(1, p.n + 1)]))
            assert got == (p.k + 1) * p.n
            assert got - (p.n * p.k - 1) == p.n + 1
