"""Buchberger engine and the ideal operations built on it.

Orders, reduced bases, normal forms, division with quotients, lifts
(ideal-membership certificates), elimination, colon, saturation,
intersection, codimension and minimal generators.  All arithmetic is
exact over QQ.
"""

from __future__ import annotations

import heapq
import operator
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from gmpy2 import mpq

from .poly import (
    Polynomial,
    RingDescriptor,
    RingMismatchError,
    SubstitutionMap,
    apply_substitution,
    change_ring,
)

DEFAULT_STEP_BUDGET = 10**6


class ResourceBudgetExceeded(RuntimeError):
    """The S-pair budget ran out before the basis was complete."""

    def __init__(self, budget: int):
        super().__init__(f"Groebner computation exceeded the step budget of {budget} S-pairs")
        self.budget = budget


class NotHomogeneousError(ValueError):
    pass


_budget = DEFAULT_STEP_BUDGET


def set_default_budget(n: int) -> None:
    global _budget
    if n < 1:
        raise ValueError("budget must be >= 1")
    _budget = int(n)


def default_budget() -> int:
    return _budget


@contextmanager
def step_budget(n: int | None):
    """Temporarily replace the default budget (``None`` leaves it alone)."""
    old = _budget
    if n is not None:
        set_default_budget(n)
    try:
        yield
    finally:
        set_default_budget(old)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``wdegrevlex`` (weighted degree reverse lex) or ``block``.

    A block order compares the variables in ``block`` first (weighted
    degrevlex on them) and breaks ties with weighted degrevlex on the rest;
    it eliminates ``block``.
    """

    kind: str
    weights: tuple[int, ...]
    block: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("lex", "wdegrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "block", tuple(sorted(self.block)))
        n = len(self.weights)
        if self.kind == "lex":
            fn = tuple
        elif self.kind == "wdegrevlex":
            w = self.weights
            idx = tuple(range(n - 1, -1, -1))

            def fn(e, w=w, idx=idx):
                return (sum(a * b for a, b in zip(e, w)),) + tuple(-e[i] for i in idx)
        else:
            front = self.block
            rest = tuple(i for i in range(n) if i not in set(front))
            wf = [self.weights[i] for i in front]
            wr = [self.weights[i] for i in rest]
            rf = front[::-1]
            rr = rest[::-1]

            def fn(e, front=front, rest=rest, wf=wf, wr=wr, rf=rf, rr=rr):
                return ((sum(e[i] * w for i, w in zip(front, wf)),) + tuple(-e[i] for i in rf)
                        + (sum(e[i] * w for i, w in zip(rest, wr)),) + tuple(-e[i] for i in rr))
        object.__setattr__(self, "_fn", fn)
        object.__setattr__(self, "codec", _Codec(self))

    @classmethod
    def lex(cls, ring: RingDescriptor) -> MonomialOrder:
        return cls("lex", ring.weights)

    @classmethod
    def grevlex(cls, ring: RingDescriptor) -> MonomialOrder:
        return cls("wdegrevlex", ring.weights)

    @classmethod
    def elimination(cls, ring: RingDescriptor, names: Iterable[str]) -> MonomialOrder:
        return cls("block", ring.weights, tuple(ring.index(n) for n in names))

    @classmethod
    def named(cls, name: str, ring: RingDescriptor) -> MonomialOrder:
        if name in ("grevlex", "wdegrevlex", "degrevlex"):
            return cls.grevlex(ring)
        if name == "lex":
            return cls.lex(ring)
        raise ValueError(f"unknown order name {name!r}")

    def key(self, e: tuple) -> tuple:
        k = self._cache.get(e)
        if k is None:
            k = self._fn(e)
            self._cache[e] = k
        return k

    def leading(self, terms) -> tuple:
        return max(terms, key=self.key)

    def is_global_for(self, ring: RingDescriptor) -> bool:
        return len(self.weights) == ring.nvars


# -- packed monomials ------------------------------------------------------
#
# Inside the engine an exponent vector is one int with _BITS bits per
# variable, so multiplying monomials is integer addition.  Every supported
# order key is a linear function of the exponents, so it is also carried as
# one int (digits in base 2^40) and shifts by addition as well.

_BITS = 24
_FIELD = (1 << _BITS) - 1
_MAX_EXP = 1 << (_BITS - 1)
_KBASE = 1 << 40


class _Codec:
    __slots__ = ("n", "guard", "kcoef", "weights")

    def __init__(self, order: MonomialOrder):
        n = len(order.weights)
        self.n = n
        self.weights = order.weights
        self.guard = sum(1 << (_BITS * i + _BITS - 1) for i in range(n))
        units = [order._fn(tuple(int(j == i) for j in range(n))) for i in range(n)]
        width = len(units[0]) if units else 0
        self.kcoef = tuple(sum(d * _KBASE ** (width - 1 - pos) for pos, d in enumerate(u))
                           for u in units)

    def enc(self, e) -> int:
        p = 0
        for i, x in enumerate(e):
            if x >= _MAX_EXP:
                raise OverflowError(f"exponent {x} too large for the engine")
            p |= x << (_BITS * i)
        return p

    def dec(self, p: int) -> tuple:
        return tuple((p >> (_BITS * i)) & _FIELD for i in range(self.n))

    def key(self, e) -> int:
        return sum(x * c for x, c in zip(e, self.kcoef))

    def encode(self, terms: dict) -> list:
        """{exponent tuple: c} -> [(key, packed, c)] (unsorted)."""
        return [(self.key(e), self.enc(e), c) for e, c in terms.items()]

    def decode(self, terms) -> dict:
        return {self.dec(p): c for _, p, c in terms}

    def decode_flat(self, d: dict) -> dict:
        return {self.dec(p): c for p, c in d.items()}

    def degree(self, p: int) -> int:
        return sum(x * w for x, w in zip(self.dec(p), self.weights))


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mask(e) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(map(operator.sub, a, b))


class _P:
    """Basis element inside the engine: terms [(key, packed, c)] sorted by key, descending."""

    __slots__ = ("terms", "tail", "lk", "lm", "lc", "lme", "mask", "sugar", "cof", "codec")

    def __init__(self, terms: list, codec: _Codec, sugar=None, cof=None):
        terms = sorted(terms, key=_first, reverse=True)
        self.terms = terms
        self.tail = terms[1:]
        self.lk, self.lm, self.lc = terms[0]
        self.lme = codec.dec(self.lm)
        self.mask = _mask(self.lme)
        deg = max(codec.degree(p) for _, p, _ in terms)
        self.sugar = deg if sugar is None else max(sugar, deg)
        self.cof = cof
        self.codec = codec

    def exp_terms(self) -> dict:
        return self.codec.decode(self.terms)


def _first(t):
    return t[0]


def _pmul(a: dict, b: dict) -> dict:
    """Product of packed term dicts {packed: c}."""
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _axpy(acc: dict, terms: dict, q) -> None:
    """acc -= q * terms, in place."""
    for e, c in terms.items():
        v = acc.get(e, 0) - q * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _reduce(terms, reducers: Sequence[_P], guard: int, *, full=True,
            quotients: list | None = None) -> list:
    """Reduce packed ``terms`` by ``reducers`` (first divisor wins); returns sorted packed terms.

    With ``full`` every term is reduced, otherwise only leading terms. If
    ``quotients`` is a list of dicts (one per reducer) the multipliers are
    accumulated there, so that input = sum q_i r_i + remainder.
    """
    acc = {}
    heap = []
    for k, p, c in terms:
        acc[p] = c
        heap.append((-k, p))
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    rem: list = []
    while heap:
        nk, m = pop(heap)
        c = acc.pop(m, None)
        if c is None:
            continue
        for idx, r in enumerate(reducers):
            d = m - r.lm
            if d >= 0 and not d & guard:
                break
        else:
            rem.append((-nk, m, c))
            if not full:
                seen = set()
                for k2, p2 in heap:
                    if p2 in acc and p2 not in seen:
                        seen.add(p2)
                        rem.append((-k2, p2, acc[p2]))
                rem.sort(key=_first, reverse=True)
                return rem
            continue
        q = c / r.lc
        if quotients is not None:
            qd = quotients[idx]
            v = qd.get(d, 0) + q
            if v:
                qd[d] = v
            else:
                qd.pop(d, None)
        shift = -nk - r.lk
        for gk, gp, gc in r.tail:
            nm = gp + d
            v = acc.get(nm)
            if v is None:
                acc[nm] = -q * gc
                push(heap, (-(gk + shift), nm))
            else:
                v -= q * gc
                if v:
                    acc[nm] = v
                else:
                    del acc[nm]
    return rem


def _cof_combine(base: list, parts: list[tuple[dict, list]]) -> list:
    """base - sum(q * cof) over (q, cof) parts, component-wise (packed dicts)."""
    out = [dict(c) for c in base]
    for q, cof in parts:
        if not q:
            continue
        for i, ci in enumerate(cof):
            if ci:
                _axpy(out[i], _pmul(q, ci), 1)
    return out


def _groebner(polys: list[dict], order: MonomialOrder, weights, budget: int,
              track: bool = False) -> list[_P]:
    """Reduced Groebner basis of the given term dicts, sorted by leading monomial (descending)."""
    codec = order.codec
    guard = codec.guard
    ngens = len(polys)
    items: list[_P] = []
    active: list[int] = []
    pairs: list[tuple] = []
    steps = 0

    def push(p: _P):
        idx = len(items)
        items.append(p)
        _update(idx)

    def _update(h):
        nonlocal active, pairs
        ph = items[h]
        lmh = ph.lme
        cands = list(active)
        keep = []
        for pos, g1 in enumerate(cands):
            lm1 = items[g1].lme
            if not (ph.mask & items[g1].mask):
                keep.append(g1)
                continue
            l1 = _lcm(lmh, lm1)
            redundant = False
            for g2 in cands[pos + 1:]:
                if _divides(_lcm(lmh, items[g2].lme), l1):
                    redundant = True
                    break
            if not redundant:
                for g2 in keep:
                    if _divides(_lcm(lmh, items[g2].lme), l1):
                        redundant = True
                        break
            if not redundant:
                keep.append(g1)
        new_pairs = [g for g in keep if ph.mask & items[g].mask]
        filtered = []
        for pr in pairs:
            _, _, i, j, l = pr
            if (_divides(lmh, l) and _lcm(items[i].lme, lmh) != l
                    and _lcm(lmh, items[j].lme) != l):
                continue
            filtered.append(pr)
        for g in new_pairs:
            l = _lcm(items[g].lme, lmh)
            pg = items[g]
            sugar = max(pg.sugar + _deg(_sub(l, pg.lme)), ph.sugar + _deg(_sub(l, lmh)))
            filtered.append((sugar, codec.key(l), g, h, l))
        pairs = filtered
        active = [g for g in active if not _divides(lmh, items[g].lme)] + [h]

    def _deg(e):
        return sum(a * b for a, b in zip(e, weights))

    def monic(terms, cof, sugar):
        p = _P(terms, codec, sugar=sugar)
        inv = 1 / p.lc
        if inv != 1:
            p.terms = [(k, e, c * inv) for k, e, c in p.terms]
            p.tail = p.terms[1:]
            p.lc = mpq(1)
            if cof is not None:
                cof = [{e: c * inv for e, c in ci.items()} for ci in cof]
        p.cof = cof
        return p

    def reducers():
        return [items[i] for i in active]

    def shifted(p: _P, lp: int, lk: int, scale) -> dict:
        d, dk = lp - p.lm, lk - p.lk
        return {e + d: (k + dk, c * scale) for k, e, c in p.terms}

    seeds = []
    zero = 0
    for gi, t in enumerate(polys):
        if t:
            cof = None
            if track:
                cof = [dict() for _ in range(ngens)]
                cof[gi] = {zero: mpq(1)}
            enc = codec.encode(t)
            seeds.append((max(enc, key=_first)[0], enc, cof))
    seeds.sort(key=_first)
    for _, t, cof in seeds:
        red = reducers()
        quot = [dict() for _ in red] if track else None
        h = _reduce(t, red, guard, full=False, quotients=quot)
        if not h:
            continue
        if track:
            cof = _cof_combine(cof, [(q, r.cof) for q, r in zip(quot, red)])
        push(monic(h, cof, None))

    while pairs:
        best = min(range(len(pairs)), key=lambda k: pairs[k][:2])
        sugar, lk, i, j, l = pairs.pop(best)
        steps += 1
        if steps > budget:
            raise ResourceBudgetExceeded(budget)
        pi, pj = items[i], items[j]
        lp = codec.enc(l)
        s = shifted(pi, lp, lk, 1 / pi.lc)
        for e, (k, c) in shifted(pj, lp, lk, 1 / pj.lc).items():
            old = s.get(e)
            if old is None:
                s[e] = (k, -c)
            elif old[1] == c:
                del s[e]
            else:
                s[e] = (k, old[1] - c)
        cof = None
        if track:
            si, sj = lp - pi.lm, lp - pj.lm
            cof = _cof_combine([dict() for _ in range(ngens)],
                               [({si: -1 / pi.lc}, pi.cof), ({sj: 1 / pj.lc}, pj.cof)])
        if not s:
            continue
        red = reducers()
        quot = [dict() for _ in red] if track else None
        h = _reduce([(k, e, c) for e, (k, c) in s.items()], red, guard, full=False,
                    quotients=quot)
        if not h:
            continue
        if track:
            cof = _cof_combine(cof, [(q, r.cof) for q, r in zip(quot, red)])
        push(monic(h, cof, sugar))

    # interreduce the minimal basis
    basis = [items[i] for i in active]
    basis.sort(key=lambda p: p.lk, reverse=True)
    out = []
    for pos, p in enumerate(basis):
        others = basis[:pos] + basis[pos + 1:]
        quot = [dict() for _ in others] if track else None
        tail = _reduce(p.terms, others, guard, full=True, quotients=quot)
        cof = p.cof
        if track:
            cof = _cof_combine(cof, [(q, r.cof) for q, r in zip(quot, others)])
        out.append(monic(tail, cof, p.sugar))
    return out


def _reduce_dict(terms: dict, reducers: Sequence[_P], order: MonomialOrder, *, full=True,
                 quotients: list | None = None) -> dict:
    """Tuple-keyed wrapper around :func:`_reduce`."""
    codec = order.codec
    return codec.decode(_reduce(codec.encode(terms), reducers, codec.guard, full=full,
                                quotients=quotients))


# ---------------------------------------------------------------------------
# public single-shot operations
# ---------------------------------------------------------------------------

def _check_ring(ring, polys):
    for p in polys:
        if p.ring != ring:
            raise RingMismatchError(f"{p.ring} vs {ring}")


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder | None = None,
               budget: int | None = None) -> list[Polynomial]:
    """Reduced Groebner basis (monic, sorted by descending leading monomial)."""
    if not generators:
        return []
    ring = generators[0].ring
    _check_ring(ring, generators)
    order = order or MonomialOrder.grevlex(ring)
    basis = _groebner([p.terms for p in generators], order, ring.weights,
                      budget or default_budget())
    return [Polynomial(ring, p.exp_terms(), _trusted=True) for p in basis]


def _as_P(basis: Sequence[Polynomial], order) -> list[_P]:
    return [_P(order.codec.encode(b.terms), order.codec) for b in basis if b.terms]


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None
                ) -> Polynomial:
    """Fully reduced remainder of ``p`` modulo ``basis`` (canonical when ``basis`` is a GB)."""
    order = order or MonomialOrder.grevlex(p.ring)
    _check_ring(p.ring, basis)
    rem = _reduce_dict(p.terms, _as_P(basis, order), order, full=True)
    return Polynomial(p.ring, rem, _trusted=True)


@dataclass
class DivisionResult:
    remainder: Polynomial
    quotients: list[Polynomial]

    def reconstruct(self, divisors: Sequence[Polynomial]) -> Polynomial:
        total = self.remainder
        for q, d in zip(self.quotients, divisors):
            total = total + q * d
        return total


def divide_with_quotients(p: Polynomial, divisors: Sequence[Polynomial],
                          order: MonomialOrder | None = None) -> DivisionResult:
    """Multivariate division: the first divisor whose leading term divides wins."""
    ring = p.ring
    _check_ring(ring, divisors)
    order = order or MonomialOrder.grevlex(ring)
    live = [(k, d) for k, d in enumerate(divisors) if d.terms]
    reducers = [_P(order.codec.encode(d.terms), order.codec) for _, d in live]
    quot = [dict() for _ in reducers]
    rem = _reduce_dict(p.terms, reducers, order, full=True, quotients=quot)
    quotients = [ring.zero() for _ in divisors]
    for (k, _), q in zip(live, quot):
        quotients[k] = Polynomial(ring, order.codec.decode_flat(q), _trusted=True)
    return DivisionResult(Polynomial(ring, rem, _trusted=True), quotients)


def lift(p: Polynomial, generators: Sequence[Polynomial], order: MonomialOrder | None = None,
         budget: int | None = None) -> list[Polynomial] | None:
    """Cofactors c with p = sum c_i * generators_i, or None if p is not in the ideal."""
    ring = p.ring
    _check_ring(ring, generators)
    order = order or MonomialOrder.grevlex(ring)
    basis = _groebner([g.terms for g in generators], order, ring.weights,
                      budget or default_budget(), track=True)
    return _lift_with(p, basis, len(generators), order)


def _lift_with(p: Polynomial, basis: list[_P], ngens: int, order) -> list[Polynomial] | None:
    ring = p.ring
    quot = [dict() for _ in basis]
    rem = _reduce_dict(p.terms, basis, order, full=True, quotients=quot)
    if rem:
        return None
    zero_cof = [dict() for _ in range(ngens)]
    combo = _cof_combine(zero_cof, [(q, b.cof) for q, b in zip(quot, basis)])
    dec = order.codec.dec
    return [Polynomial(ring, {dec(e): -c for e, c in ci.items()}, _trusted=True) for ci in combo]


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class Ideal:
    """Finitely generated ideal with a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: RingDescriptor, generators: Iterable[Polynomial] = (),
                 budget: int | None = None):
        gens = tuple(generators)
        _check_ring(ring, gens)
        self.ring = ring
        self.generators = tuple(g for g in gens if g.terms)
        self.budget = budget
        self._gb: dict = {}
        self._tracked: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def default_order(self) -> MonomialOrder:
        return MonomialOrder.grevlex(self.ring)

    def _basis_P(self, order) -> list[_P]:
        order = order or self.default_order()
        cached = self._gb.get(order)
        if cached is None:
            cached = _groebner([g.terms for g in self.generators], order, self.ring.weights,
                               self.budget or default_budget())
            with self._lock:
                self._gb.setdefault(order, cached)
                cached = self._gb[order]
        return cached

    def gb(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        return [Polynomial(self.ring, p.exp_terms(), _trusted=True) for p in self._basis_P(order)]

    def normal_form(self, p: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.default_order()
        _check_ring(self.ring, [p])
        rem = _reduce_dict(p.terms, self._basis_P(order), order, full=True)
        return Polynomial(self.ring, rem, _trusted=True)

    def contains(self, p: Polynomial, order: MonomialOrder | None = None) -> bool:
        return self.normal_form(p, order).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: Ideal, order: MonomialOrder | None = None) -> bool:
        if other.ring != self.ring:
            raise RingMismatchError("ideals live in different rings")
        return all(self.contains(g, order) for g in other.generators)

    def lift(self, p: Polynomial) -> list[Polynomial] | None:
        """Cofactors expressing ``p`` in terms of ``self.generators``."""
        order = self.default_order()
        basis = self._tracked.get(order)
        if basis is None:
            basis = _groebner([g.terms for g in self.generators], order, self.ring.weights,
                              self.budget or default_budget(), track=True)
            with self._lock:
                self._tracked.setdefault(order, basis)
        return _lift_with(p, basis, len(self.generators), order)

    def is_unit(self) -> bool:
        return any(p.is_constant() for p in self.gb())

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        if all(g.is_homogeneous()[0] for g in self.generators):
            return True
        return all(g.is_homogeneous()[0] for g in self.gb())

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatchError("ideals live in different rings")
            return Ideal(self.ring, self.generators + other.generators, self.budget)
        return Ideal(self.ring, self.generators + tuple(other), self.budget)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.generators], self.budget)
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators],
                     self.budget)

    def map(self, fn, ring: RingDescriptor | None = None) -> Ideal:
        return Ideal(ring or self.ring, [fn(g) for g in self.generators], self.budget)

    def leading_monomials(self, order: MonomialOrder | None = None) -> list[tuple]:
        return [p.lme for p in self._basis_P(order)]


def _fresh(ring: RingDescriptor, base: str) -> str:
    name = base
    k = 0
    while name in ring:
        k += 1
        name = f"{base}{k}"
    return name


def _restrict_ring(ring: RingDescriptor, drop: set[str]) -> RingDescriptor:
    return RingDescriptor(tuple(v for v in ring.variables if v[0] not in drop))


def eliminate(I: Ideal, drop_vars: Iterable[str]) -> Ideal:
    """I intersected with the subring without ``drop_vars`` (result lives in that subring)."""
    drop = set(drop_vars)
    for name in drop:
        I.ring.index(name)
    small = _restrict_ring(I.ring, drop)
    if not drop:
        return Ideal(small, I.generators, I.budget)
    order = MonomialOrder.elimination(I.ring, sorted(drop, key=I.ring.index))
    idx = [I.ring.index(n) for n in drop]
    keep = []
    for p in I._basis_P(order):
        if all(p.lme[i] == 0 for i in idx):
            keep.append(change_ring(Polynomial(I.ring, p.exp_terms(), _trusted=True), small))
    return Ideal(small, keep, I.budget)


def _embed(I: Ideal, ring: RingDescriptor) -> list[Polynomial]:
    return [change_ring(g, ring) for g in I.generators]


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1 - t)*J, eliminating the tag t."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, [], I.budget)
    tag = _fresh(I.ring, "tag")
    big = RingDescriptor(((tag, 1),) + I.ring.variables)
    t = big.gen(tag)
    gens = [t * g for g in _embed(I, big)] + [(1 - t) * g for g in _embed(J, big)]
    return eliminate(Ideal(big, gens, I.budget or J.budget), [tag])


def _exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    res = divide_with_quotients(p, [g])
    if not res.remainder.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return res.quotients[0]


def _homogeneous(p: Polynomial) -> bool:
    return p.is_homogeneous()[0]


def _bayer(I: Ideal, g: Polynomial, saturate: bool) -> Ideal:
    """(I : g) or (I : g^oo) for homogeneous data.

    Adds v with weight deg g as the last variable, takes the degrevlex basis
    of I + (v - g), strips v from every element divisible by it and maps v -> g.
    """
    ok, d = g.is_homogeneous()
    vname = _fresh(I.ring, "v")
    big = I.ring.extend([(vname, d)])
    v = big.gen(vname)
    gens = _embed(I, big) + [v - change_ring(g, big)]
    J = Ideal(big, gens, I.budget)
    vi = big.nvars - 1
    out = []
    back = {n: I.ring.gen(n) for n in I.ring.names}
    back[vname] = g
    sub = SubstitutionMap(big, I.ring, tuple(back[n] for n in big.names))
    for p in J._basis_P(MonomialOrder.grevlex(big)):
        k = p.lme[vi]
        exp_terms = p.exp_terms()
        if k and not saturate:
            k = 1
        if k:
            terms = {}
            for e, c in exp_terms.items():
                e = list(e)
                e[vi] -= k
                terms[tuple(e)] = c
        else:
            terms = exp_terms
        out.append(apply_substitution(sub, Polynomial(big, terms, _trusted=True)))
    return Ideal(I.ring, out, I.budget)


def colon(I: Ideal, g: Polynomial, method: str = "auto") -> Ideal:
    """(I : g) = {h : h g in I}.

    ``method`` is ``"bayer"`` (homogeneous data only), ``"intersect"``
    (via I ∩ (g), divided by g) or ``"auto"``.
    """
    _check_ring(I.ring, [g])
    if g.is_zero():
        raise ValueError("colon by the zero polynomial")
    if g.is_constant():
        return Ideal(I.ring, I.generators, I.budget)
    if method == "auto":
        method = "bayer" if (_homogeneous(g) and I.is_homogeneous()) else "intersect"
    if method == "bayer":
        if not (_homogeneous(g) and I.is_homogeneous()):
            raise NotHomogeneousError("bayer colon needs homogeneous input")
        return _bayer(I, g, saturate=False)
    if method != "intersect":
        raise ValueError(f"unknown colon method {method!r}")
    inter = intersect(I, Ideal(I.ring, [g], I.budget))
    return Ideal(I.ring, [_exact_divide(h, g) for h in inter.gb()], I.budget)


def colon_ideal(I: Ideal, J: Ideal | Sequence[Polynomial], method: str = "auto") -> Ideal:
    """(I : J) as the intersection of the element colons over J's distinct generators."""
    gens = J.generators if isinstance(J, Ideal) else tuple(J)
    seen = []
    for u in gens:
        if u.terms and all(u != s and u != -s for s in seen):
            seen.append(u)
    if not seen:
        return Ideal(I.ring, [I.ring.one()], I.budget)
    result = None
    for u in seen:
        c = colon(I, u, method)
        if c.is_unit():
            continue
        result = c if result is None else intersect(result, c)
        result = Ideal(I.ring, result.gb(), I.budget)
    return result if result is not None else Ideal(I.ring, [I.ring.one()], I.budget)


def saturate(I: Ideal, g: Polynomial, method: str = "auto") -> Ideal:
    """(I : g^oo); ``method`` is ``"bayer"``, ``"rabinowitsch"`` or ``"auto"``."""
    _check_ring(I.ring, [g])
    if g.is_zero():
        raise ValueError("saturation by the zero polynomial")
    if g.is_constant():
        return Ideal(I.ring, I.generators, I.budget)
    if method == "auto":
        method = "bayer" if (_homogeneous(g) and I.is_homogeneous()) else "rabinowitsch"
    if method == "bayer":
        if not (_homogeneous(g) and I.is_homogeneous()):
            raise NotHomogeneousError("bayer saturation needs homogeneous input")
        return _bayer(I, g, saturate=True)
    if method != "rabinowitsch":
        raise ValueError(f"unknown saturation method {method!r}")
    y = _fresh(I.ring, "y")
    big = RingDescriptor(((y, 1),) + I.ring.variables)
    gens = _embed(I, big) + [big.gen(y) * change_ring(g, big) - 1]
    return eliminate(Ideal(big, gens, I.budget), [y])


def ideal_equal(I: Ideal, J: Ideal, order: MonomialOrder | None = None) -> bool:
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return I.contains_ideal(J, order) and J.contains_ideal(I, order)


# ---------------------------------------------------------------------------
# dimension and generators
# ---------------------------------------------------------------------------

def _min_transversal(supports: list[frozenset]) -> int:
    """Smallest set of variables meeting every support (branch and bound)."""
    supports = sorted(set(supports), key=len)
    best = [len(set().union(*supports)) if supports else 0]

    def search(chosen: frozenset, size: int):
        if size >= best[0]:
            return
        for s in supports:
            if not (s & chosen):
                for v in sorted(s):
                    search(chosen | {v}, size + 1)
                return
        best[0] = size

    search(frozenset(), 0)
    return best[0]


def monomial_codimension(monomials: Iterable[tuple]) -> int:
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in monomials]
    if any(not s for s in supports):
        raise ValueError("unit ideal has no codimension")
    return _min_transversal(supports)


def codimension(I: Ideal) -> int:
    """Height of I: number of variables minus the Krull dimension of R/I."""
    lms = I.leading_monomials()
    if any(not any(m) for m in lms):
        raise ValueError("codimension of the unit ideal is undefined")
    return monomial_codimension(lms)


def krull_dimension(I: Ideal) -> int:
    return I.ring.nvars - codimension(I)


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """A minimal homogeneous generating set (count and degrees are canonical)."""
    if not all(g.is_homogeneous()[0] for g in I.generators):
        raise NotHomogeneousError("minimal_generators needs homogeneous generators")
    gens = sorted(I.generators, key=lambda g: g.degree())
    accepted: list[Polynomial] = []
    current = Ideal(I.ring, [], I.budget)
    for g in gens:
        if current.contains(g):
            continue
        accepted.append(g)
        current = Ideal(I.ring, accepted, I.budget)
    return accepted
