"""Executable checks: formal identities, oracle equalities, codimensions,
Hilbert symmetry and the cuspidal-cubic example.

Every check returns :class:`CheckReport`; failures carry a witness.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from .groebner import (
    Ideal,
    NotHomogeneousError,
    ResourceBudgetExceeded,
    codimension,
    step_budget,
)
from .hilbert import hilbert_series
from .poly import PolyMatrix, Polynomial, RingDescriptor, SubstitutionMap, two_by_two_minors
from .unprojection import (
    GenericityError,
    Parameters,
    PresentationIdeal,
    RelationLiftError,
    SectionsNotFound,
    UnprojectionData,
    a_name,
    assemble_presentation,
    base_ring,
    build_ID,
    build_specialized_CI,
    compute_sections,
    image_ideal_IN,
    kernel_oracle,
    normalization_map,
    t_name,
)

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class CheckReport:
    name: str
    status: str
    k: int | None = None
    n: int | None = None
    spec: str | None = None
    detail: str = ""
    witness: str | None = None
    seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and not self.witness:
            raise ValueError(f"failed check {self.name} needs a witness")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        where = ""
        if self.k is not None:
            where = f" (k={self.k}, n={self.n}" + (f", {self.spec}" if self.spec else "") + ")"
        out = f"{self.status.upper():7s} {self.name}{where}"
        if self.detail:
            out += f": {self.detail}"
        if self.witness and self.status == FAIL:
            out += f" [witness: {self.witness}]"
        return out + f" [{self.seconds:.2f}s]"

    def to_dict(self) -> dict:
        return asdict(self)


def _timed(name: str, fn: Callable[[], tuple[str, str, str | None]], **where) -> CheckReport:
    t0 = time.perf_counter()
    try:
        status, detail, witness = fn()
    except ResourceBudgetExceeded as exc:
        status, detail, witness = SKIP, str(exc), None
    except NotHomogeneousError as exc:
        status, detail, witness = SKIP, f"not graded: {exc}", None
    return CheckReport(name, status, detail=detail, witness=witness,
                       seconds=time.perf_counter() - t0, **where)


# ---------------------------------------------------------------------------
# formal identities in QQ[a, z, S_0..S_k]
# ---------------------------------------------------------------------------

def identity_ring(params: Parameters) -> RingDescriptor:
    return base_ring(params).extend((f"S_{p}", 1) for p in range(params.k + 1))


def telescoping_cases(params: Parameters, mutate: bool = False):
    """Yield (label, lhs - rhs) for a_it S_j - (-1)^(j-m) a_lt S_m = telescoping sum."""
    k, n = params.k, params.n
    R = identity_ring(params)
    a = lambda i, t: R.gen(a_name(i, t))  # noqa: E731
    S = lambda p: R.gen(f"S_{p}")  # noqa: E731
    for t in range(1, n + 1):
        for i in range(1, k + 2):
            for l in range(i + 1, k + 2):  # noqa: E741
                for j in range(k + 1):
                    m = i + j - l
                    if m < 0 or m > k:
                        continue
                    lhs = a(i, t) * S(j) - (a(l, t) * S(m)).scale((-1) ** (j - m))
                    rhs = R.zero()
                    for q in range(i, l):
                        term = a(q, t) * S(j + i - q) + a(q + 1, t) * S(j + i - q - 1)
                        flip = -1 if mutate and q == i else 1
                        rhs = rhs + term.scale(flip * (-1) ** (q - i))
                    yield f"(i,j,l,m,t)=({i},{j},{l},{m},{t})", lhs - rhs


def shift_cases(params: Parameters, mutate: bool = False):
    """a11 (S_i S_j - S_{i-1} S_{j+1}) = S_j (a11 S_i + a21 S_{i-1}) - S_{i-1} (a11 S_{j+1} + a21 S_j)."""
    k = params.k
    R = identity_ring(params)
    a11, a21 = R.gen(a_name(1, 1)), R.gen(a_name(2, 1))
    S = lambda p: R.gen(f"S_{p}")  # noqa: E731
    for i in range(1, k + 1):
        for j in range(0, k):
            lhs = a11 * (S(i) * S(j) - S(i - 1) * S(j + 1))
            sign = -1 if mutate else 1
            rhs = S(j) * (a11 * S(i) + (a21 * S(i - 1)).scale(sign)) \
                - S(i - 1) * (a11 * S(j + 1) + a21 * S(j))
            yield f"(i,j)=({i},{j})", lhs - rhs


def wrap_cases(params: Parameters, mutate: bool = False):
    """a11 (S_k S_i - (-1)^(k+1) z S_{i-1} S_0)
    = S_i (a11 S_k - (-1)^k a_{k+1,1} S_0) - (-1)^(k+1) S_0 (a11 z S_{i-1} + a_{k+1,1} S_i)."""
    k = params.k
    R = identity_ring(params)
    a11, ak1, z = R.gen(a_name(1, 1)), R.gen(a_name(k + 1, 1)), R.gen("z")
    S = lambda p: R.gen(f"S_{p}")  # noqa: E731
    s1 = (-1) ** (k + 1)
    for i in range(1, k + 1):
        lhs = a11 * (S(k) * S(i) - (z * S(i - 1) * S(0)).scale(s1))
        inner = (ak1 * S(0)).scale((-1) ** k if not mutate else (-1) ** (k + 1))
        rhs = S(i) * (a11 * S(k) - inner) - (S(0) * (a11 * z * S(i - 1) + ak1 * S(i))).scale(s1)
        yield f"i={i}", lhs - rhs


IDENTITIES = {"telescoping": telescoping_cases, "shift": shift_cases, "wrap": wrap_cases}


def check_lemma_identities(k_max: int, n_max: int, mutate: bool = False) -> list[CheckReport]:
    """One report per (identity, k, n) with k <= k_max, 2 <= n <= n_max."""
    reports = []
    for k in range(1, k_max + 1):
        for n in range(2, n_max + 1):
            params = Parameters(k, n)
            for name, cases in IDENTITIES.items():
                def run(cases=cases):
                    count = 0
                    for label, diff in cases(params, mutate):
                        count += 1
                        if not diff.is_zero():
                            return FAIL, f"{label} leaves a nonzero difference", str(diff)
                    return PASS, f"{count} tuples", None
                reports.append(_timed(f"identity:{name}" + (":mutated" if mutate else ""), run,
                                      k=k, n=n))
    return reports


# ---------------------------------------------------------------------------
# oracle checks
# ---------------------------------------------------------------------------

def _where(data: UnprojectionData) -> dict:
    if data.params is None:
        return {"spec": data.label or None}
    return {"k": data.params.k, "n": data.params.n, "spec": data.label or None}


def _first_missing(big: Ideal, small: Ideal) -> Polynomial | None:
    for g in big.gb():
        if not small.contains(g):
            return g
    return None


def check_presentation(data: UnprojectionData, presentation: PresentationIdeal | None = None,
                       budget: int | None = None) -> CheckReport:
    """kernel_oracle(data) == I_X + (f^a, f^b, g^a, g^b)."""
    def run():
        with step_budget(budget):
            pres = presentation or assemble_presentation(data)
            K = kernel_oracle(data)
            P = pres.ideal()
            extra = _first_missing(K, P)
            if extra is not None:
                return FAIL, "kernel has elements outside the presentation", str(extra)
            extra = _first_missing(P, K)
            if extra is not None:
                return FAIL, "presentation has elements outside the kernel", str(extra)
            return PASS, f"kernel = presentation ({len(pres.non_ix_generators())} non-I_X generators)", None
    return _timed("presentation", run, **_where(data))


def generators_modulo(ix: Ideal, gens: list[Polynomial]) -> list[Polynomial]:
    """Greedy minimal homogeneous system for the image of (gens) in R / ix."""
    accepted: list[Polynomial] = []
    current = ix
    for g in sorted(gens, key=lambda g: g.degree()):
        if not current.contains(g):
            accepted.append(g)
            current = Ideal(ix.ring, list(ix.generators) + accepted, ix.budget)
    return accepted


def check_nonprincipal(data: UnprojectionData, budget: int | None = None) -> CheckReport:
    """Graded proxy for I_D being non-principal in O_X: at least two minimal generators."""
    def run():
        if not all(u.is_homogeneous()[0] for u in data.minors + list(data.ix.generators)):
            raise NotHomogeneousError("minors or I_X not homogeneous")
        with step_budget(budget):
            kept = generators_modulo(data.ix, list(data.minors))
        degs = ", ".join(str(g.degree()) for g in kept)
        if len(kept) >= 2:
            return PASS, f"{len(kept)} minimal generators modulo I_X (degrees {degs}); graded proxy", None
        return FAIL, "image of I_D is principal modulo I_X", "; ".join(map(str, kept)) or "0"
    return _timed("nonprincipal", run, **_where(data))


def normalization_residuals(pres: PresentationIdeal) -> list[tuple[str, Polynomial]]:
    """Images of the T-linear part of f^a, f^b and the T-quadratic part of g^a, g^b
    under a_ij -> x_j t^(i-1), z -> t^(k+1), T_p -> (-1)^p t^p.  All should vanish."""
    params = pres.params
    base = RingDescriptor(tuple(v for v in pres.ring.variables if not v[0].startswith("T_")))
    sigma0 = normalization_map(params, base)
    target = sigma0.target
    t = target.gen("t")
    images = dict(zip(base.names, sigma0.assignment))
    for p in range(params.k + 1):
        images[t_name(p)] = (-t) ** p
    sigma = SubstitutionMap(pres.ring, target, tuple(images[name] for name in pres.ring.names))
    tidx = [pres.ring.index(t_name(p)) for p in range(params.k + 1)]

    def part(g: Polynomial, deg: int) -> Polynomial:
        terms = {e: c for e, c in g.terms.items() if sum(e[i] for i in tidx) == deg}
        return Polynomial(pres.ring, terms)

    out = []
    for label, g in pres.labeled():
        if label.startswith("I_X"):
            continue
        deg = 1 if label.startswith("f") else 2
        out.append((label, sigma(part(g, deg))))
    return out


def check_normalization(pres: PresentationIdeal, spec: str | None = None) -> CheckReport:
    def run():
        res = normalization_residuals(pres)
        for label, img in res:
            if not img.is_zero():
                return FAIL, f"{label} survives the normalization map", str(img)
        return PASS, f"{len(res)} relation leading parts vanish", None
    return _timed("normalization", run, k=pres.params.k, n=pres.params.n, spec=spec)


def check_codimensions(data: UnprojectionData, presentation: PresentationIdeal | None = None,
                       budget: int | None = None) -> list[CheckReport]:
    params = data.params
    k, n = params.k, params.n
    where = _where(data)

    def c_id():
        got = codimension(build_ID(params, base_ring(params)))
        return (PASS if got == n * k else FAIL), f"codim I_D = {got}, expected nk = {n * k}", str(got)

    def c_pres():
        with step_budget(budget):
            pres = presentation or assemble_presentation(data)
            got = codimension(pres.ideal())
        want = n * k + k
        return (PASS if got == want else FAIL), f"codim = {got}, expected nk + k = {want}", str(got)

    def c_in():
        with step_budget(budget):
            hi = codimension(image_ideal_IN(data))
            lo = codimension(data.ix)
        return (PASS if hi - lo == 1 else FAIL), \
            f"codim(I_N + I_X) - codim(I_X) = {hi} - {lo} = {hi - lo}", f"{hi} - {lo}"

    def c_a():
        R = base_ring(params)
        got = codimension(Ideal(R, [R.gen(a_name(i, j)) for i in range(1, k + 2)
                                    for j in range(1, n + 1)]))
        diff = got - (n * k - 1)
        ok = got == (k + 1) * n and diff == n + 1
        return (PASS if ok else FAIL), \
            f"codim(a) = {got} = (k+1)n, (k+1)n - (nk-1) = {diff} = n+1", f"{got}, {diff}"

    return [_timed("codim:I_D", c_id, **where), _timed("codim:presentation", c_pres, **where),
            _timed("codim:I_N", c_in, **where), _timed("codim:a", c_a, **where)]


def check_gorenstein_symmetry(target: PresentationIdeal | Ideal, spec: str | None = None
                              ) -> CheckReport:
    """Palindromic Hilbert numerator (a necessary condition for Gorenstein)."""
    where = {}
    if isinstance(target, PresentationIdeal):
        where = {"k": target.params.k, "n": target.params.n, "spec": spec}
        if not target.is_graded():
            return CheckReport("gorenstein", SKIP, detail="presentation is not graded", **where)
        ideal = target.ideal()
    else:
        ideal = target
        where = {"spec": spec}

    def run():
        hs = hilbert_series(ideal).reduced()
        num = hs.numerator_str()
        if hs.is_palindromic():
            return PASS, f"numerator {num} is palindromic", None
        return FAIL, f"numerator {num} is not palindromic", num
    return _timed("gorenstein", run, **where)


# ---------------------------------------------------------------------------
# the cuspidal cubic
# ---------------------------------------------------------------------------

def cuspidal_cubic_data() -> UnprojectionData:
    """I = (x1, x2) on QQ[x0, x1, x2] / (x2^2 x0 - x1^3), f = x2."""
    R = RingDescriptor.from_names(["x0", "x1", "x2"])
    ix = Ideal(R, [R.parse("x2^2*x0 - x1^3")])
    return UnprojectionData(R, ix, [R.gen("x1"), R.gen("x2")], R.gen("x2"), label="cuspidal-cubic")


def twisted_cubic(ring: RingDescriptor, T: str) -> Ideal:
    x0, x1, x2, t = (ring.gen(v) for v in ("x0", "x1", "x2", T))
    return Ideal(ring, two_by_two_minors(PolyMatrix.from_rows([[x2, x1, t], [x1, t, x0]])))


def check_cuspidal_counterexample() -> CheckReport:
    """The unprojection of the cuspidal cubic is the twisted cubic, which is not Gorenstein."""
    def run():
        data = cuspidal_cubic_data()
        nums = compute_sections(data)
        if len(nums) != 1:
            return FAIL, "expected a single section", ", ".join(map(str, nums))
        K = kernel_oracle(data)
        tc = twisted_cubic(K.ring, t_name(0))
        extra = _first_missing(K, tc) or _first_missing(tc, K)
        if extra is not None:
            return FAIL, "kernel differs from the twisted cubic", str(extra)
        hs = hilbert_series(K).reduced()
        if hs.is_palindromic():
            return FAIL, "twisted cubic numerator came out palindromic", hs.numerator_str()
        return PASS, (f"s = {nums[0]}/x2, kernel = twisted cubic minors, "
                      f"numerator {hs.numerator_str()} not palindromic"), None
    return _timed("counterexample", run, spec="cuspidal-cubic")


# ---------------------------------------------------------------------------
# specialized data with fallbacks
# ---------------------------------------------------------------------------

def load_standard(params: Parameters, budget: int | None = None
                  ) -> tuple[UnprojectionData | None, PresentationIdeal | None, list[str]]:
    """First documented specialization whose preconditions hold, with its presentation.

    Returns (None, None, reasons) when every candidate is rejected.
    """
    from .specializations import standard_specializations

    reasons = []
    for spec in standard_specializations(params):
        try:
            with step_budget(budget):
                data = build_specialized_CI(params, spec.substitution(), label=spec.ident)
                if codimension(data.ix) != params.nk - 1:
                    raise GenericityError("complete intersection", "I_X has the wrong codimension")
                pres = assemble_presentation(data)
            return data, pres, reasons
        except (GenericityError, SectionsNotFound, RelationLiftError, ResourceBudgetExceeded) as exc:
            reasons.append(f"{spec.ident}: {exc}")
    if not reasons:
        reasons.append(f"no documented specialization for (k, n) = ({params.k}, {params.n})")
    return None, None, reasons
