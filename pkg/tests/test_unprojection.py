import pytest

from typeii.groebner import Ideal, codimension, ideal_equal
from typeii.poly import RingDescriptor, SubstitutionMap, apply_substitution
from typeii.specializations import STANDARD
from typeii.unprojection import (
    GenericityError,
    Parameters,
    UnprojectionData,
    assemble_presentation,
    base_ring,
    build_generic_CI,
    build_matrix_M,
    build_specialized_CI,
    ci_weights,
    compute_linear_relations,
    compute_quadratic_relations,
    compute_sections,
    generic_ring,
    image_ideal_IN,
    kernel_oracle,
    normalization_map,
    quadratic_index_ranges,
    specialize,
)
from typeii.verify import cuspidal_cubic_data, twisted_cubic

P12 = Parameters(1, 2)


@pytest.fixture(scope="module")
def std12():
    spec = STANDARD[(1, 2)][0]
    data = build_specialized_CI(P12, spec.substitution(), label=spec.ident)
    return data, assemble_presentation(data)


@pytest.fixture(scope="module")
def generic12():
    data = build_generic_CI(P12, sections=True)
    return data, assemble_presentation(data)


def test_parameters_validate():
    with pytest.raises(ValueError, match="k >= 1"):
        Parameters(0, 2)
    with pytest.raises(ValueError, match="n >= 2"):
        Parameters(1, 1)
    assert Parameters(2, 2).nminors == 15


def test_matrix_shape_and_entries():
    R = base_ring(P12)
    M = build_matrix_M(P12, R)
    assert (M.rows, M.cols) == (2, 4)
    assert M.entry(0, 2) == R.parse("z*a_1_1")
    assert M.entry(1, 3) == R.gen("a_2_2")
    assert R.weight("z") == 2 and R.weight("a_2_1") == 2


@pytest.mark.parametrize("k, n, minors, gens", [(1, 2, 6, 1), (2, 2, 15, 3), (1, 3, 15, 2)])
def test_generic_counts(k, n, minors, gens):
    data = build_generic_CI(Parameters(k, n))
    assert len(data.minors) == minors
    assert len(data.ix.generators) == gens
    assert all(g.is_homogeneous()[0] for g in data.ix.generators)


def test_ci_weights_are_minimal_positive():
    w = ci_weights(P12)
    assert min(w) == 1
    R = generic_ring(P12)
    assert [R.weight(f"w_1_{j}") for j in range(1, 7)] == w


def test_matrix_requires_variables():
    with pytest.raises(ValueError, match="lacks"):
        build_matrix_M(P12, RingDescriptor.from_names(["x"]))


def test_sections_of_standard_specialization(std12):
    data, _ = std12
    g = data.numerators
    assert len(g) == 2
    assert g[1].degree() == g[0].degree() + 1
    assert data.t_degrees() == [1, 2]
    base = Ideal(data.ambient, list(data.ix.generators) + [data.f])
    for gp in g:
        assert all(base.contains(gp * u) for u in data.minors)
    assert not data.ix.contains(g[0])


def test_sections_follow_residue_pattern(std12):
    data, _ = std12
    sigma = normalization_map(P12, data.ambient)
    t = sigma.target.gen("t")
    s0 = sigma(data.numerators[0])
    assert not s0.is_zero()
    assert sigma(data.numerators[1]) == s0 * (-t)


def test_linear_relations_replay(std12):
    data, _ = std12
    c, d = compute_linear_relations(data)
    R = data.ambient
    g = data.numerators
    for (i, j, p), cv in c.items():
        h = R.gen(f"a_{i + 1}_{j}") * g[p] + R.gen(f"a_{i}_{j}") * g[p + 1] - cv * data.f
        assert data.ix.contains(h)
    for (j, p), dv in d.items():
        h = R.gen("z") * R.gen(f"a_1_{j}") * g[p] + R.gen(f"a_2_{j}") * g[p + 1] - dv * data.f
        assert data.ix.contains(h)


def test_quadratic_relations_replay(std12):
    data, _ = std12
    _, tails_b = compute_quadratic_relations(data)
    g, f = data.numerators, data.f
    z = data.ambient.gen("z")
    lambdas, mu = tails_b[(1, 1)]
    N = g[1] * g[1] - z * g[0] * g[0]
    assert data.ix.contains(N - f * (lambdas[0] * g[0] + lambdas[1] * g[1]) - f * f * mu)


def test_quadratic_index_ranges():
    assert quadratic_index_ranges(1) == ([], [(1, 1)])
    qa, qb = quadratic_index_ranges(3)
    assert qa == [(1, 1), (1, 2)]
    assert qb == [(1, 3), (2, 2), (2, 3), (3, 3)]


def test_presentation_shape(std12):
    _, pres = std12
    assert pres.counts() == {"I_X": 1, "f^a": 2, "f^b": 2, "g^a": 0, "g^b": 1}
    assert len(pres.non_ix_generators()) == 5
    assert pres.is_graded()
    assert codimension(pres.ideal()) == 3


def test_kernel_oracle_matches_presentation(std12):
    data, pres = std12
    assert ideal_equal(kernel_oracle(data), pres.ideal())


def test_kernel_oracle_methods_agree(std12):
    data, _ = std12
    assert ideal_equal(kernel_oracle(data, "bayer"), kernel_oracle(data, "rabinowitsch"))


def test_dropping_a_quadric_loses_the_kernel(std12):
    data, pres = std12
    smaller = pres.without("g^b[1,1]").ideal()
    assert not smaller.contains_ideal(kernel_oracle(data))


def test_generic_12_presentation(generic12):
    data, pres = generic12
    assert data.t_degrees() == [1, 2]
    assert len(pres.non_ix_generators()) == 5
    assert ideal_equal(kernel_oracle(data), pres.ideal())


def test_specialize_identity_keeps_generators(generic12):
    _, pres = generic12
    ident = SubstitutionMap.identity(generic_ring(P12))
    same = specialize(pres, ident)
    assert [g for _, g in same.labeled()] == [g for _, g in pres.labeled()]


def test_base_change_matches_kernel_of_pushed_sections(generic12):
    """hat applied to the generic presentation = kernel built from hat(g_p) / hat(f)."""
    data, pres = generic12
    hat = STANDARD[(1, 2)][0].substitution()
    pushed = specialize(pres, hat)
    target = build_specialized_CI(P12, hat)
    moved = UnprojectionData(target.ambient, target.ix, target.minors,
                             apply_substitution(hat, data.f), P12, target.M,
                             [apply_substitution(hat, g) for g in data.numerators])
    assert ideal_equal(kernel_oracle(moved), pushed.ideal())


def test_image_ideal_raises_codimension_by_one(std12):
    data, _ = std12
    assert codimension(image_ideal_IN(data)) - codimension(data.ix) == 1


def test_specialization_must_fix_a_and_z():
    G = generic_ring(P12)
    hat = SubstitutionMap.from_mapping(G, G, {"a_1_1": "a_1_2"})
    with pytest.raises(ValueError, match="fix"):
        build_specialized_CI(P12, hat)


def test_vanishing_specialization_is_a_genericity_failure():
    G = generic_ring(P12)
    B = base_ring(P12)
    hat = SubstitutionMap.from_mapping(G, B, {n: "0" for n in G.names if n.startswith("w")})
    with pytest.raises(GenericityError):
        build_specialized_CI(P12, hat)


def test_cuspidal_cubic_section_and_kernel():
    data = cuspidal_cubic_data()
    assert [str(g) for g in compute_sections(data)] == ["x1^2"]
    K = kernel_oracle(data)
    assert ideal_equal(K, twisted_cubic(K.ring, "T_0"))
    T = K.ring.gen("T_0")
    x0, x1, x2 = (K.ring.gen(v) for v in ("x0", "x1", "x2"))
    for h in (x2 * T - x1 ** 2, x1 * T - x0 * x2, T * T - x0 * x1, x2 * x2 * x0 - x1 ** 3):
        assert K.contains(h)


def test_cuspidal_image_ideal():
    got = image_ideal_IN(cuspidal_cubic_data())
    R = got.ring
    assert ideal_equal(got, Ideal(R, [R.parse("x1^2"), R.parse("x0*x2")]))


@pytest.mark.slow
def test_standard_13_presentation():
    spec = STANDARD[(1, 3)][0]
    data = build_specialized_CI(spec.params, spec.substitution())
    pres = assemble_presentation(data)
    assert data.t_degrees() == [1, 2]
    assert codimension(pres.ideal()) == 4
    assert ideal_equal(kernel_oracle(data), pres.ideal())
