import pytest

from typeii import verify as V
from typeii.groebner import Ideal
from typeii.poly import RingDescriptor
from typeii.specializations import STANDARD
from typeii.unprojection import (
    Parameters,
    UnprojectionData,
    assemble_presentation,
    build_specialized_CI,
)


@pytest.fixture(scope="module")
def std12():
    spec = STANDARD[(1, 2)][0]
    data = build_specialized_CI(spec.params, spec.substitution(), label=spec.ident)
    return data, assemble_presentation(data)


def test_failed_report_requires_witness():
    with pytest.raises(ValueError, match="witness"):
        V.CheckReport("x", V.FAIL)
    r = V.CheckReport("x", V.FAIL, 1, 2, "std12", "bad", "w", 0.5)
    assert not r.ok
    assert r.line() == "FAIL    x (k=1, n=2, std12): bad [witness: w] [0.50s]"


def test_identities_hold_on_the_grid():
    reports = V.check_lemma_identities(4, 4)
    assert len(reports) == 3 * 4 * 3
    assert all(r.status == V.PASS for r in reports)


def test_every_mutated_identity_is_caught():
    reports = V.check_lemma_identities(4, 4, mutate=True)
    assert all(r.status == V.FAIL and r.witness for r in reports)


@pytest.mark.parametrize("name", sorted(V.IDENTITIES))
def test_identity_case_counts_are_nonempty(name):
    assert list(V.IDENTITIES[name](Parameters(2, 3)))


def test_presentation_and_normalization_pass(std12):
    data, pres = std12
    assert V.check_presentation(data, pres).status == V.PASS
    assert V.check_normalization(pres, data.label).status == V.PASS
    assert all(r.is_zero() for _, r in V.normalization_residuals(pres))


def test_broken_presentation_is_reported_with_witness(std12):
    data, pres = std12
    rep = V.check_presentation(data, pres.without("g^b[1,1]"))
    assert rep.status == V.FAIL
    assert "T_1" in rep.witness


def test_codimension_reports(std12):
    data, pres = std12
    reps = V.check_codimensions(data, pres)
    assert [r.name for r in reps] == ["codim:I_D", "codim:presentation", "codim:I_N", "codim:a"]
    assert all(r.status == V.PASS for r in reps)


def test_gorenstein_symmetry(std12):
    _, pres = std12
    assert V.check_gorenstein_symmetry(pres).status == V.PASS
    R = RingDescriptor.from_names(["x0", "x1", "x2", "T"])
    rep = V.check_gorenstein_symmetry(V.twisted_cubic(R, "T"))
    assert rep.status == V.FAIL and rep.witness == "1 + 2t"


def test_cuspidal_counterexample():
    rep = V.check_cuspidal_counterexample()
    assert rep.status == V.PASS
    assert "1 + 2t" in rep.detail


def test_budget_exhaustion_becomes_skip(std12):
    data, pres = std12
    rep = V.check_presentation(data, pres, budget=1)
    assert rep.status == V.SKIP and "budget" in rep.detail


def test_inhomogeneous_input_skips_gorenstein():
    R = RingDescriptor.from_names(["x", "y"])
    rep = V.check_gorenstein_symmetry(Ideal(R, [R.parse("x^2 + y")]))
    assert rep.status == V.SKIP


def test_load_standard_reports_missing_pairs():
    data, pres, reasons = V.load_standard(Parameters(3, 3))
    assert data is None and pres is None
    assert "no documented specialization" in reasons[0]


def test_nonprincipal_proxy(std12):
    data, _ = std12
    rep = V.check_nonprincipal(data)
    assert rep.status == V.PASS and "proxy" in rep.detail
    R = RingDescriptor.from_names(["x", "y"])
    x = R.gen("x")
    principal = UnprojectionData(R, Ideal(R, []), [x, x * R.gen("y")], x)
    rep = V.check_nonprincipal(principal)
    assert rep.status == V.FAIL and rep.witness == "x"
