"""Sparse multivariate polynomials over QQ on weighted-graded rings.

Terms are stored as ``{exponent tuple: mpq}`` with no zero coefficients.
Everything here is a value type; arithmetic never mutates its operands.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

NEG_INF = float("-inf")
"""Weighted degree of the zero polynomial."""

_SCALARS = (int, type(mpq(0)), Fraction)
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class RingMismatchError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    """Raised by :func:`parse_polynomial`; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


@dataclass(frozen=True)
class RingDescriptor:
    """Polynomial ring QQ[x_1..x_n] with a positive integer weight per variable."""

    variables: tuple[tuple[str, int], ...]
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        variables = tuple((str(n), int(w)) for n, w in self.variables)
        object.__setattr__(self, "variables", variables)
        names = [n for n, _ in variables]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {dup}")
        for name, weight in variables:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if weight < 1:
                raise ValueError(f"weight of {name} must be >= 1, got {weight}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def from_names(cls, names: Iterable[str], weights: Iterable[int] | None = None):
        names = list(names)
        weights = [1] * len(names) if weights is None else list(weights)
        return cls(tuple(zip(names, weights)))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"ring has no variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def weight(self, name: str) -> int:
        return self.variables[self.index(name)][1]

    def gen(self, name: str) -> Polynomial:
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): mpq(1)}, _trusted=True)

    def gens(self) -> list[Polynomial]:
        return [self.gen(n) for n in self.names]

    def __getitem__(self, name: str) -> Polynomial:
        return self.gen(name)

    def zero(self) -> Polynomial:
        return Polynomial(self, {}, _trusted=True)

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = mpq(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {}, _trusted=True)

    def monomial(self, exponents: Sequence[int], coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exponents): mpq(coeff)})

    def extend(self, more: Iterable[tuple[str, int]]) -> RingDescriptor:
        return RingDescriptor(self.variables + tuple(more))

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self)

    def degree_of(self, exponents: Sequence[int]) -> int:
        return sum(e * w for e, w in zip(exponents, self.weights))

    def __str__(self):
        inner = ", ".join(f"{n}:{w}" for n, w in self.variables)
        return f"QQ[{inner}]"


def _check_exp(ring: RingDescriptor, e) -> tuple:
    e = tuple(int(x) for x in e)
    if len(e) != ring.nvars or any(x < 0 for x in e):
        raise ValueError(f"bad exponent vector {e} for {ring.nvars} variables")
    return e


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingDescriptor, terms: Mapping | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for e, c in (terms or {}).items():
                c = mpq(c)
                if c:
                    e = _check_exp(ring, e)
                    c = clean.get(e, 0) + c
                    if c:
                        clean[e] = c
                    else:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, _SCALARS):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, mul_terms(self.terms, other.terms), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        c = mpq(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, _trusted=True)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading ------------------------------------------------------------
    def degree(self):
        """Weighted degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        w = self.ring.weights
        return max(sum(a * b for a, b in zip(e, w)) for e in self.terms)

    def is_homogeneous(self) -> tuple[bool, int | None]:
        """Return ``(flag, degree)``; the zero polynomial is homogeneous of degree None."""
        w = self.ring.weights
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        if len(degs) > 1:
            return False, None
        return True, (degs.pop() if degs else None)

    def variables(self) -> set[str]:
        names = self.ring.names
        used = set()
        for e in self.terms:
            used.update(names[i] for i, x in enumerate(e) if x)
        return used

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def coefficient(self, exponents: Sequence[int]):
        return self.terms.get(tuple(exponents), mpq(0))

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self.terms)

    def homogeneous_part(self, d: int) -> Polynomial:
        w = self.ring.weights
        return Polynomial(self.ring, {e: c for e, c in self.terms.items()
                                      if sum(a * b for a, b in zip(e, w)) == d}, _trusted=True)

    def sorted_terms(self):
        """Terms in descending weighted-degree-reverse-lex order."""
        return sorted(self.terms.items(), key=lambda ec: _wgrevlex_key(ec[0], self.ring.weights),
                      reverse=True)

    def primitive(self) -> Polynomial:
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = math.lcm(den, int(c.denominator))
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for x in nums:
            g = math.gcd(g, x)
        lead = self.sorted_terms()[0][1]
        factor = mpq(den, g) * (1 if lead > 0 else -1)
        return self.scale(factor)

    # -- text ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _wgrevlex_key(e, weights):
    return (sum(a * b for a, b in zip(e, weights)),) + tuple(-x for x in reversed(e))


def mul_terms(a: Mapping, b: Mapping) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


# -- text grammar -----------------------------------------------------------

def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolynomialSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        col = m.start(kind) + 1
        tokens.append((kind, m.group(kind), col))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    # expr := ['+'|'-'] term (('+'|'-') term)*
    # term := factor ('*' factor)*        factor := atom ['^' int]
    # atom := int ['/' int] | name | '(' expr ')'

    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, col = self.take()
        if val != value:
            raise PolynomialSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", col)

    def parse(self):
        p = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {val!r}", col)
        return p

    def expr(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", col)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                k2, v2, c2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise PolynomialSyntaxError("bad denominator", c2)
                return self.ring.const(mpq(int(val), int(v2)))
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", col)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {val or 'end of input'!r}", col)


def parse_polynomial(text: str, ring: RingDescriptor) -> Polynomial:
    """Parse ``3*x^2*y - 1/2*z`` style text (parentheses allowed) in ``ring``."""
    return _Parser(text, ring).parse()


# -- matrices and homomorphisms --------------------------------------------

@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[Polynomial, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        entries = tuple(self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(f"need {self.rows * self.cols} entries, got {len(entries)}")
        if len({e.ring for e in entries}) > 1:
            raise RingMismatchError("matrix entries live in different rings")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]):
        rows = [list(r) for r in rows]
        if len({len(r) for r in rows}) != 1:
            raise ValueError("ragged rows")
        return cls(len(rows), len(rows[0]), tuple(x for r in rows for x in r))

    @property
    def ring(self) -> RingDescriptor:
        return self.entries[0].ring

    def entry(self, i: int, j: int) -> Polynomial:
        """0-based entry access."""
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Polynomial]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[Polynomial]:
        return [self.entry(i, j) for i in range(self.rows)]

    def map(self, fn) -> PolyMatrix:
        return PolyMatrix(self.rows, self.cols, tuple(fn(e) for e in self.entries))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


def two_by_two_minors(m: PolyMatrix) -> list[Polynomial]:
    """All 2x2 minors of a 2-row matrix, column pairs (p, q), p < q, in lex order.

    Duplicates are kept so that positions match the column-pair enumeration.
    """
    if m.rows != 2:
        raise ValueError(f"two_by_two_minors needs exactly 2 rows, got {m.rows}")
    return [m.entry(0, p) * m.entry(1, q) - m.entry(1, p) * m.entry(0, q)
            for p, q in combinations(range(m.cols), 2)]


def minor_column_pairs(cols: int) -> list[tuple[int, int]]:
    """1-based column pairs in the order used by :func:`two_by_two_minors`."""
    return [(p + 1, q + 1) for p, q in combinations(range(cols), 2)]


@dataclass(frozen=True)
class SubstitutionMap:
    """Ring homomorphism source -> target given by the images of the source variables."""

    source: RingDescriptor
    target: RingDescriptor
    assignment: tuple[Polynomial, ...]

    def __post_init__(self):
        assignment = tuple(self.assignment)
        if len(assignment) != self.source.nvars:
            raise ValueError("substitution must assign every source variable")
        for img in assignment:
            if img.ring != self.target:
                raise RingMismatchError("substitution image outside target ring")
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def from_mapping(cls, source, target, mapping: Mapping[str, Polynomial | str] | None = None):
        """Build from ``{name: image}``; unlisted source variables map to the same-named target variable."""
        mapping = dict(mapping or {})
        unknown = set(mapping) - set(source.names)
        if unknown:
            raise KeyError(f"not source variables: {sorted(unknown)}")
        images = []
        for name in source.names:
            if name in mapping:
                img = mapping[name]
                if isinstance(img, str):
                    img = parse_polynomial(img, target)
                elif not isinstance(img, Polynomial):
                    img = target.const(img)
            elif name in target:
                img = target.gen(name)
            else:
                raise KeyError(f"no image for {name!r} and no same-named target variable")
            images.append(img)
        return cls(source, target, tuple(images))

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring, tuple(ring.gens()))

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_substitution(self, p)

    def image(self, name: str) -> Polynomial:
        return self.assignment[self.source.index(name)]


def apply_substitution(sigma: SubstitutionMap, p: Polynomial) -> Polynomial:
    if p.ring != sigma.source:
        raise RingMismatchError("polynomial is not in the substitution's source ring")
    target = sigma.target
    powers: dict[tuple[int, int], dict] = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            if k == 1:
                powers[key] = sigma.assignment[i].terms
            else:
                half = power(i, k // 2)
                sq = mul_terms(half, half)
                powers[key] = mul_terms(sq, sigma.assignment[i].terms) if k % 2 else sq
        return powers[key]

    zero = (0,) * target.nvars
    out: dict = {}
    for e, c in p.terms.items():
        acc = {zero: c}
        for i, k in enumerate(e):
            if k:
                acc = mul_terms(acc, power(i, k))
                if not acc:
                    break
        for te, tc in acc.items():
            v = out.get(te, 0) + tc
            if v:
                out[te] = v
            else:
                out.pop(te, None)
    return Polynomial(target, out, _trusted=True)


def change_ring(p: Polynomial, ring: RingDescriptor) -> Polynomial:
    """Re-express ``p`` in ``ring`` by variable name (every used variable must exist there)."""
    src = p.ring
    pos = []
    for i, name in enumerate(src.names):
        pos.append(ring.index(name) if name in ring else None)
    out = {}
    n = ring.nvars
    for e, c in p.terms.items():
        ne = [0] * n
        for i, x in enumerate(e):
            if x:
                if pos[i] is None:
                    raise KeyError(f"variable {src.names[i]!r} missing from target ring")
                ne[pos[i]] = x
        out[tuple(ne)] = c
    return Polynomial(ring, out, _trusted=True)
