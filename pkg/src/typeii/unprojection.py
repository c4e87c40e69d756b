"""Type II unprojection: the matrix M, I_D, complete-intersection data,
sections of I_D^{-1}, the relation families and the kernel oracle.

Naming: ``a_i_j`` (weight i), ``z`` (weight k+1), ``w_p_j`` for the
complete-intersection coefficients, ``T_p`` for the new variables, and
``x_j``, ``t`` on the normalization side.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .groebner import (
    Ideal,
    NotHomogeneousError,
    colon,
    colon_ideal,
    divide_with_quotients,
    ideal_equal,
    saturate,
)
from .poly import (
    PolyMatrix,
    Polynomial,
    RingDescriptor,
    SubstitutionMap,
    apply_substitution,
    change_ring,
    minor_column_pairs,
    two_by_two_minors,
)

log = logging.getLogger(__name__)


class SectionsNotFound(RuntimeError):
    """Fewer than k+1 independent fractions in I_D^{-1}: the data is not generic enough."""


class RelationLiftError(RuntimeError):
    """A relation numerator is not in the ideal it should belong to."""


class GenericityError(RuntimeError):
    """A genericity precondition (regular denominator, codimension, ...) failed."""

    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


@dataclass(frozen=True)
class Parameters:
    k: int
    n: int

    def __post_init__(self):
        if int(self.k) < 1:
            raise ValueError(f"k must satisfy k >= 1, got k={self.k}")
        if int(self.n) < 2:
            raise ValueError(f"n must satisfy n >= 2, got n={self.n}")

    @property
    def ncols(self) -> int:
        return self.n * (self.k + 1)

    @property
    def nminors(self) -> int:
        return comb(self.ncols, 2)

    @property
    def nk(self) -> int:
        return self.n * self.k


def a_name(i: int, j: int) -> str:
    return f"a_{i}_{j}"


def w_name(p: int, j: int) -> str:
    return f"w_{p}_{j}"


def t_name(p: int) -> str:
    return f"T_{p}"


def base_ring(params: Parameters) -> RingDescriptor:
    """QQ[a_ij, z] with w(a_ij) = i and w(z) = k+1."""
    k, n = params.k, params.n
    vs = [(a_name(i, j), i) for i in range(1, k + 2) for j in range(1, n + 1)]
    vs.append(("z", k + 1))
    return RingDescriptor(tuple(vs))


def build_matrix_M(params: Parameters, ambient: RingDescriptor) -> PolyMatrix:
    k, n = params.k, params.n
    missing = [a_name(i, j) for i in range(1, k + 2) for j in range(1, n + 1)
               if a_name(i, j) not in ambient]
    if "z" not in ambient:
        missing.append("z")
    if missing:
        raise ValueError(f"ambient ring lacks variables {missing}")
    a = lambda i, j: ambient.gen(a_name(i, j))  # noqa: E731
    z = ambient.gen("z")
    top = [a(i + 1, j) for i in range(1, k + 1) for j in range(1, n + 1)]
    top += [z * a(1, j) for j in range(1, n + 1)]
    bottom = [a(i, j) for i in range(1, k + 1) for j in range(1, n + 1)]
    bottom += [a(k + 1, j) for j in range(1, n + 1)]
    return PolyMatrix.from_rows([top, bottom])


def build_ID(params: Parameters, ambient: RingDescriptor) -> Ideal:
    return Ideal(ambient, two_by_two_minors(build_matrix_M(params, ambient)))


def ci_weights(params: Parameters) -> list[int]:
    """Weights of w_{p,j}: max minor degree + 1 - deg u_j (smallest uniform positive choice)."""
    minors = two_by_two_minors(build_matrix_M(params, base_ring(params)))
    degs = [u.degree() for u in minors]
    top = max(degs) + 1
    return [top - d for d in degs]


def generic_ring(params: Parameters) -> RingDescriptor:
    ws = ci_weights(params)
    extra = [(w_name(p, j), ws[j - 1])
             for p in range(1, params.nk) for j in range(1, params.nminors + 1)]
    return base_ring(params).extend(extra)


def normalization_ring(params: Parameters, ambient: RingDescriptor) -> RingDescriptor:
    """QQ[x_1..x_n, t] plus every ambient variable that is not an a_ij or z."""
    core = {a_name(i, j) for i in range(1, params.k + 2) for j in range(1, params.n + 1)} | {"z"}
    vs = [(f"x_{j}", 1) for j in range(1, params.n + 1)] + [("t", 1)]
    vs += [v for v in ambient.variables if v[0] not in core]
    return RingDescriptor(tuple(vs))


def normalization_map(params: Parameters, ambient: RingDescriptor,
                      target: RingDescriptor | None = None) -> SubstitutionMap:
    """a_ij -> x_j t^(i-1), z -> t^(k+1), anything else fixed."""
    target = target or normalization_ring(params, ambient)
    t = target.gen("t")
    mapping = {}
    for i in range(1, params.k + 2):
        for j in range(1, params.n + 1):
            mapping[a_name(i, j)] = target.gen(f"x_{j}") * t ** (i - 1)
    mapping["z"] = t ** (params.k + 1)
    return SubstitutionMap.from_mapping(ambient, target, mapping)


# ---------------------------------------------------------------------------
# unprojection data
# ---------------------------------------------------------------------------

@dataclass
class UnprojectionData:
    """Initial data I_X ⊂ I_D ⊂ ambient plus the chosen denominator f.

    ``params``/``M`` are None for non type II inputs (e.g. a single section
    over a hypersurface).  ``numerators`` holds g_0..g_k once computed; the
    fractions are s_p = g_p / f.
    """

    ambient: RingDescriptor
    ix: Ideal
    minors: list[Polynomial]
    f: Polynomial
    params: Parameters | None = None
    M: PolyMatrix | None = None
    numerators: list[Polynomial] | None = None
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def id_ideal(self) -> Ideal:
        return Ideal(self.ambient, self.minors, self.ix.budget)

    @property
    def base(self) -> Ideal:
        """I_X + (f)."""
        if "base" not in self._cache:
            self._cache["base"] = Ideal(self.ambient, self.ix.generators + (self.f,), self.ix.budget)
        return self._cache["base"]

    @property
    def sections(self) -> list[tuple[Polynomial, Polynomial]]:
        if self.numerators is None:
            compute_sections(self)
        return [(g, self.f) for g in self.numerators]

    def is_graded(self) -> bool:
        return all(g.is_homogeneous()[0] for g in self.ix.generators) and \
            self.f.is_homogeneous()[0]

    def t_degrees(self) -> list[int] | None:
        if self.numerators is None or not self.is_graded():
            return None
        return [g.degree() - self.f.degree() for g in self.numerators]

    def t_ring(self) -> RingDescriptor:
        if self.numerators is None:
            compute_sections(self)
        degs = self.t_degrees()
        m = len(self.numerators)
        weights = degs if degs is not None and all(d >= 1 for d in degs) else [1] * m
        return self.ambient.extend((t_name(p), w) for p, w in enumerate(weights))


def choose_denominator(params: Parameters, minors: Sequence[Polynomial], ix: Ideal) -> Polynomial:
    """Minor of column pair (1, n+1) if nonzero, else the first minor regular modulo I_X."""
    pairs = minor_column_pairs(params.ncols)
    first = minors[pairs.index((1, params.n + 1))]
    if not first.is_zero() and _regular_mod(first, ix):
        return first
    for u in minors:
        if not u.is_zero() and _regular_mod(u, ix):
            return u
    raise GenericityError("denominator", "no minor is a nonzerodivisor modulo I_X")


def _regular_mod(g: Polynomial, ix: Ideal) -> bool:
    if ix.contains(g):
        return False
    if ix.is_zero():
        return True
    return ideal_equal(colon(ix, g), ix)


def build_generic_CI(params: Parameters, *, sections: bool = False) -> UnprojectionData:
    """Generic complete-intersection data: f^p = sum_j w_pj u_j, p = 1..nk-1.

    Sections are only computed when asked for; the generic colon computation
    is expensive beyond the smallest parameters.
    """
    ring = generic_ring(params)
    M = build_matrix_M(params, ring)
    u = two_by_two_minors(M)
    gens = []
    for p in range(1, params.nk):
        fp = ring.zero()
        for j, uj in enumerate(u, start=1):
            fp = fp + ring.gen(w_name(p, j)) * uj
        gens.append(fp)
    ix = Ideal(ring, gens)
    f = u[minor_column_pairs(params.ncols).index((1, params.n + 1))]
    data = UnprojectionData(ring, ix, u, f, params, M, label=f"generic({params.k},{params.n})")
    if sections:
        compute_sections(data)
    return data


def build_specialized_CI(params: Parameters, hat: SubstitutionMap, label: str = "",
                         budget: int | None = None) -> UnprojectionData:
    """Complete-intersection data pushed through ``hat`` (generic ring -> target).

    ``hat`` must fix every a_ij and z; only the w's are specialized.
    """
    src = generic_ring(params)
    if hat.source != src:
        raise ValueError("substitution source must be the generic complete-intersection ring")
    for name in base_ring(params).names:
        if name not in hat.target or hat.image(name) != hat.target.gen(name):
            raise ValueError(f"specialization must fix {name}")
    generic = build_generic_CI(params)
    target = hat.target
    M = build_matrix_M(params, target)
    u = two_by_two_minors(M)
    gens = [apply_substitution(hat, g) for g in generic.ix.generators]
    ix = Ideal(target, gens, budget)
    if any(g.is_zero() for g in gens):
        raise GenericityError("complete intersection", "a specialized generator vanished")
    f = choose_denominator(params, u, ix)
    return UnprojectionData(target, ix, u, f, params, M, label=label)


# ---------------------------------------------------------------------------
# sections s_p = g_p / f
# ---------------------------------------------------------------------------

def _exact_quotient(num: Polynomial, den: Polynomial) -> Polynomial | None:
    res = divide_with_quotients(num, [den])
    if not res.remainder.is_zero():
        return None
    return res.quotients[0]


def _a_monomial(params: Parameters, ring: RingDescriptor, xexp: Sequence[int], tpow: int
                ) -> Polynomial:
    """An ambient monomial in a's and z mapping to x^xexp * t^tpow (needs sum(xexp) >= 1)."""
    k = params.k
    factors = []
    for j, e in enumerate(xexp, start=1):
        factors += [j] * e
    zpow = 0
    spare = tpow - k * len(factors)
    if spare > 0:
        zpow = -(-spare // (k + 1))
        tpow -= zpow * (k + 1)
    out = ring.gen("z") ** zpow
    for j in factors:
        take = min(k, tpow)
        tpow -= take
        out = out * ring.gen(a_name(take + 1, j))
    assert tpow == 0
    return out


def compute_sections(data: UnprojectionData) -> list[Polynomial]:
    """Numerators g_0..g_k of sections s_p = g_p / f of I_D^{-1}.

    I_D^{-1} = (1/f)((I_X + (f)) : I_D).  Type II data additionally gets the
    residue normalisation sigma(g_p) = (-t)^p sigma(g_0), which makes
    a_{i+1,j} s_p + a_{ij} s_{p+1} regular along D.
    """
    if data.numerators is not None:
        return data.numerators
    base = data.base
    if not _regular_mod(data.f, data.ix):
        raise GenericityError("denominator", f"f = {data.f} is a zero divisor modulo I_X")
    J = colon_ideal(base, data.minors)
    data._cache["colon"] = J
    gb = J.gb()
    if data.params is None:
        nums = []
        for g in gb:
            g = base.normal_form(g)
            if not g.is_zero():
                nums.append(g.primitive())
        if not nums:
            raise SectionsNotFound("I_D^{-1} = O_X: the ideal is principal")
        data.numerators = nums
        return nums

    params = data.params
    k = params.k
    sigma = normalization_map(params, data.ambient)
    nring = sigma.target
    t = nring.gen("t")
    cands = [(g.degree(), pos, g) for pos, g in enumerate(gb) if not sigma(g).is_zero()]
    if not cands:
        raise SectionsNotFound("every colon generator lies in I_D")
    d0 = min(c[0] for c in cands)
    g0 = base.normal_form(next(g for d, _, g in cands if d == d0)).primitive()
    s0 = sigma(g0)
    nums = [g0]
    x_idx = [nring.index(f"x_{j}") for j in range(1, params.n + 1)]
    t_idx = nring.index("t")
    other_idx = [i for i in range(nring.nvars) if i not in x_idx and i != t_idx]
    amb_other = [nring.names[i] for i in other_idx]
    for p in range(k):
        want = d0 + p + 1
        chosen = None
        for g in gb:
            if g.degree() != want:
                continue
            ratio = _exact_quotient(sigma(g), s0)
            if ratio is None:
                raise SectionsNotFound(f"sigma({g}) is not a multiple of sigma(g_0)")
            pure = [0] * nring.nvars
            pure[t_idx] = p + 1
            alpha = ratio.coefficient(pure)
            if alpha:
                chosen = (g, ratio, alpha)
                break
        if chosen is None:
            raise SectionsNotFound(f"no section in degree {want} (need k+1 = {k + 1})")
        g, ratio, alpha = chosen
        correction = data.ambient.zero()
        for e, c in ratio.terms.items():
            if e == tuple(pure):
                continue
            xexp = [e[i] for i in x_idx]
            beta = e[t_idx]
            rest = data.ambient.const(c)
            for i, name in zip(other_idx, amb_other):
                if e[i]:
                    rest = rest * data.ambient.gen(name) ** e[i]
            if sum(xexp):
                correction = correction + rest * _a_monomial(params, data.ambient, xexp, beta) * g0
            elif beta <= p:
                correction = correction + rest * nums[beta].scale((-1) ** beta)
            else:
                raise SectionsNotFound(f"unexpected residue term t^{beta} in degree {want}")
        gp = (g - correction).scale(mpq((-1) ** (p + 1)) / alpha)
        gp = base.normal_form(gp)
        if sigma(gp) != s0 * (-t) ** (p + 1):
            raise SectionsNotFound(f"residue normalisation failed for s_{p + 1}")
        nums.append(gp)
    for p, gp in enumerate(nums):
        for u in data.minors:
            if not base.contains(gp * u):
                raise SectionsNotFound(f"g_{p} * u not in I_X + (f)")
    if data.ix.contains(nums[0]):
        raise GenericityError("s_0 injective", "g_0 lies in I_X")
    data.numerators = nums
    return nums


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def _ix_reduce(data: UnprojectionData, p: Polynomial) -> Polynomial:
    return data.ix.normal_form(p) if not data.ix.is_zero() else p


def _base_lift(data: UnprojectionData, h: Polynomial) -> Polynomial:
    """c with h - c f in I_X."""
    cof = data.base.lift(h)
    if cof is None:
        raise RelationLiftError(f"{h} is not in I_X + (f)")
    return _ix_reduce(data, cof[-1])


def compute_linear_relations(data: UnprojectionData):
    """Constants c_{i,j,p}, d_{j,p} with
    a_{i+1,j} s_p + a_{ij} s_{p+1} = c_{i,j,p} and z a_{1j} s_p + a_{k+1,j} s_{p+1} = d_{j,p}.
    Returns ``(c, d)`` dictionaries keyed by index tuples.
    """
    params = data.params
    g = compute_sections(data)
    R = data.ambient
    a = lambda i, j: R.gen(a_name(i, j))  # noqa: E731
    z = R.gen("z")
    c, d = {}, {}
    for i in range(1, params.k + 1):
        for j in range(1, params.n + 1):
            for p in range(params.k):
                c[(i, j, p)] = _base_lift(data, a(i + 1, j) * g[p] + a(i, j) * g[p + 1])
    for j in range(1, params.n + 1):
        for p in range(params.k):
            d[(j, p)] = _base_lift(data, z * a(1, j) * g[p] + a(params.k + 1, j) * g[p + 1])
    data._cache["linear"] = (c, d)
    return c, d


def quadratic_index_ranges(k: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    qa = [(i, j) for i in range(1, k + 1) for j in range(i, k + 1) if i + j <= k]
    qb = [(i, j) for i in range(1, k + 1) for j in range(i, k + 1) if i + j >= k + 1]
    return qa, qb


def compute_quadratic_relations(data: UnprojectionData):
    """Linear tails of g^a_{ij}, g^b_{ij}: returns ``(tails_a, tails_b)``, each mapping
    (i, j) -> (lambdas [lambda_0..lambda_k], mu) with

        N = f * sum_p lambda_p g_p + f^2 mu   (mod I_X)

    for N = g_i g_j - g_0 g_{i+j}, resp. g_i g_j - (-1)^{k+1} z g_0 g_{i+j-k-1}.
    """
    params = data.params
    k = params.k
    g = compute_sections(data)
    R = data.ambient
    f = data.f
    z = R.gen("z")
    lifter = Ideal(R, [f * gp for gp in g] + [f * f] + list(data.ix.generators), data.ix.budget)
    sign = (-1) ** (k + 1)

    def tail(N, label):
        cof = lifter.lift(N)
        if cof is None:
            raise RelationLiftError(f"{label}: numerator not in f*(g_0..g_k) + (f^2) + I_X")
        lambdas = [_ix_reduce(data, cof[p]) for p in range(k + 1)]
        mu = _ix_reduce(data, cof[k + 1])
        return lambdas, mu

    qa, qb = quadratic_index_ranges(k)
    tails_a = {(i, j): tail(g[i] * g[j] - g[0] * g[i + j], f"g^a[{i},{j}]") for i, j in qa}
    tails_b = {(i, j): tail(g[i] * g[j] - (z * g[0] * g[i + j - k - 1]).scale(sign),
                            f"g^b[{i},{j}]") for i, j in qb}
    data._cache["quadratic"] = (tails_a, tails_b)
    return tails_a, tails_b


# ---------------------------------------------------------------------------
# presentation
# ---------------------------------------------------------------------------

@dataclass
class PresentationIdeal:
    """I_X + (f^a, f^b, g^a, g^b) in ambient[T_0..T_k]."""

    ring: RingDescriptor
    params: Parameters
    ix: list[Polynomial]
    linear_a: dict
    linear_b: dict
    quad_a: dict
    quad_b: dict
    t_degrees: list[int] | None
    _ideals: dict = field(default_factory=dict, compare=False, repr=False)

    def labeled(self) -> list[tuple[str, Polynomial]]:
        out = [(f"I_X[{p}]", g) for p, g in enumerate(self.ix, start=1)]
        out += [(f"f^a[{i},{j},{p}]", g) for (i, j, p), g in sorted(self.linear_a.items())]
        out += [(f"f^b[{j},{p}]", g) for (j, p), g in sorted(self.linear_b.items())]
        out += [(f"g^a[{i},{j}]", g) for (i, j), g in sorted(self.quad_a.items())]
        out += [(f"g^b[{i},{j}]", g) for (i, j), g in sorted(self.quad_b.items())]
        return out

    def non_ix_generators(self) -> list[Polynomial]:
        return [g for label, g in self.labeled() if not label.startswith("I_X")]

    def ideal(self, budget: int | None = None) -> Ideal:
        """Shared per budget, so Groebner bases computed on it are reused."""
        if budget not in self._ideals:
            self._ideals[budget] = Ideal(self.ring, [g for _, g in self.labeled()], budget)
        return self._ideals[budget]

    def counts(self) -> dict[str, int]:
        return {"I_X": len(self.ix), "f^a": len(self.linear_a), "f^b": len(self.linear_b),
                "g^a": len(self.quad_a), "g^b": len(self.quad_b)}

    def is_graded(self) -> bool:
        return self.t_degrees is not None and all(d >= 1 for d in self.t_degrees) and all(
            g.is_homogeneous()[0] for _, g in self.labeled())

    def without(self, label: str) -> PresentationIdeal:
        """Copy with one labelled generator removed (negative controls)."""
        fams = {"f^a": dict(self.linear_a), "f^b": dict(self.linear_b),
                "g^a": dict(self.quad_a), "g^b": dict(self.quad_b)}
        fam, idx = label.split("[")
        key = tuple(int(x) for x in idx.rstrip("]").split(","))
        del fams[fam][key]
        return PresentationIdeal(self.ring, self.params, list(self.ix), fams["f^a"], fams["f^b"],
                                 fams["g^a"], fams["g^b"], self.t_degrees)


def assemble_presentation(data: UnprojectionData) -> PresentationIdeal:
    params = data.params
    if params is None:
        raise ValueError("presentation families need type II data")
    k, n = params.k, params.n
    compute_sections(data)
    c, d = data._cache.get("linear") or compute_linear_relations(data)
    tails_a, tails_b = data._cache.get("quadratic") or compute_quadratic_relations(data)
    ring = data.t_ring()
    up = lambda p: change_ring(p, ring)  # noqa: E731
    T = [ring.gen(t_name(p)) for p in range(k + 1)]
    a = lambda i, j: ring.gen(a_name(i, j))  # noqa: E731
    z = ring.gen("z")
    linear_a = {(i, j, p): a(i + 1, j) * T[p] + a(i, j) * T[p + 1] - up(c[(i, j, p)])
                for (i, j, p) in c}
    linear_b = {(j, p): z * a(1, j) * T[p] + a(k + 1, j) * T[p + 1] - up(d[(j, p)])
                for (j, p) in d}

    def quad(lead, lambdas, mu):
        out = lead
        for p, lam in enumerate(lambdas):
            out = out - up(lam) * T[p]
        return out - up(mu)

    sign = (-1) ** (k + 1)
    quad_a = {(i, j): quad(T[i] * T[j] - T[0] * T[i + j], *tails_a[(i, j)]) for (i, j) in tails_a}
    quad_b = {(i, j): quad(T[i] * T[j] - (z * T[0] * T[i + j - k - 1]).scale(sign), *tails_b[(i, j)])
              for (i, j) in tails_b}
    degs = data.t_degrees()
    if degs is not None:
        if any(degs[p + 1] != degs[p] + 1 for p in range(k)):
            raise GenericityError("T-degrees", f"expected consecutive degrees, got {degs}")
        if all(x >= 1 for x in degs):
            for label, g in [(f"f^a{key}", g) for key, g in linear_a.items()] + \
                            [(f"f^b{key}", g) for key, g in linear_b.items()] + \
                            [(f"g^a{key}", g) for key, g in quad_a.items()] + \
                            [(f"g^b{key}", g) for key, g in quad_b.items()]:
                if not g.is_homogeneous()[0]:
                    raise NotHomogeneousError(f"{label} is not homogeneous under T-degrees {degs}")
    return PresentationIdeal(ring, params, [up(g) for g in data.ix.generators],
                             linear_a, linear_b, quad_a, quad_b, degs)


def kernel_oracle(data: UnprojectionData, method: str = "auto") -> Ideal:
    """ker(T_p -> g_p/f) = (I_X + (f T_p - g_p)) : f^oo in ambient[T]."""
    compute_sections(data)
    ring = data.t_ring()
    up = lambda p: change_ring(p, ring)  # noqa: E731
    f = up(data.f)
    gens = [up(g) for g in data.ix.generators]
    gens += [f * ring.gen(t_name(p)) - up(g) for p, g in enumerate(data.numerators)]
    return saturate(Ideal(ring, gens, data.ix.budget), f, method)


def specialize(generic: PresentationIdeal, hat: SubstitutionMap) -> PresentationIdeal:
    """Base change: push every generator through ``hat`` (T_p fixed)."""
    tnames = [t_name(p) for p in range(generic.params.k + 1)]
    src_t = hat.source.extend((n, generic.ring.weight(n)) for n in tnames)
    if src_t != generic.ring:
        raise ValueError("substitution source does not match the presentation's base ring")
    target = hat.target.extend((n, generic.ring.weight(n)) for n in tnames)
    images = [change_ring(p, target) for p in hat.assignment] + [target.gen(n) for n in tnames]
    full = SubstitutionMap(generic.ring, target, tuple(images))

    def push(fam):
        return {key: apply_substitution(full, g) for key, g in fam.items()}

    return PresentationIdeal(target, generic.params, [apply_substitution(full, g) for g in generic.ix],
                             push(generic.linear_a), push(generic.linear_b),
                             push(generic.quad_a), push(generic.quad_b), generic.t_degrees)


def image_ideal_IN(data: UnprojectionData) -> Ideal:
    """I_N + I_X where I_N = s_0(I_D): generated by q_j with g_0 u_j = q_j f mod I_X."""
    g0 = compute_sections(data)[0]
    qs = []
    for u in data.minors:
        if u.is_zero():
            continue
        qs.append(_base_lift(data, g0 * u))
    return Ideal(data.ambient, list(data.ix.generators) + qs, data.ix.budget)
