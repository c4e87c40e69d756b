"""Hilbert series of weighted-homogeneous quotients R/I."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .groebner import Ideal, NotHomogeneousError


def _pmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a, b) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _divide_one_minus(p: Sequence[int], w: int) -> list[int] | None:
    """p / (1 - t^w) if exact, else None."""
    p = list(p)
    if len(p) <= w:
        return None if any(p) else [0]
    q = [0] * (len(p) - w)
    for i in range(len(q)):
        q[i] = p[i] + (q[i - w] if i >= w else 0)
    # remainder check: p - (1 - t^w) q must vanish
    check = _padd(p, [0] * w + q)
    check = _padd(check, [-x for x in q])
    if any(check):
        return None
    return _trim(q)


def format_tpoly(coeffs: Sequence[int], var: str = "t") -> str:
    pieces = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        pieces.append(("-" if c < 0 else "+", body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod(1 - t^w for w in denominator_weights).

    ``numerator`` holds integer coefficients, index = power of t.
    """

    numerator: tuple[int, ...]
    denominator_weights: tuple[int, ...]

    def reduced(self) -> HilbertSeries:
        """Cancel every denominator factor (1 - t^w) that divides the numerator."""
        num = list(self.numerator)
        left = []
        for w in sorted(self.denominator_weights):
            q = _divide_one_minus(num, w) if any(num) else None
            if q is None:
                left.append(w)
            else:
                num = q
        return HilbertSeries(tuple(_trim(num)), tuple(left))

    def coefficients(self, count: int) -> list[int]:
        """First ``count`` values of the Hilbert function."""
        series = [0] * count
        for i, c in enumerate(self.numerator[:count]):
            series[i] = c
        for w in self.denominator_weights:
            for i in range(w, count):
                series[i] += series[i - w]
        return series

    def is_palindromic(self) -> bool:
        """N(t) = ± t^deg N · N(1/t) for the numerator N."""
        num = _trim(self.numerator)
        lo = next((i for i, c in enumerate(num) if c), None)
        if lo is None:
            return True
        core = num[lo:]
        rev = core[::-1]
        return core == rev or core == [-x for x in rev]

    def numerator_str(self) -> str:
        return format_tpoly(self.numerator)

    def __str__(self):
        den = "".join(f"(1 - t^{w})" if w > 1 else "(1 - t)" for w in self.denominator_weights)
        return f"({self.numerator_str()}) / ({den or '1'})"


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def monomial_numerator(gens: Sequence[tuple], weights: Sequence[int]) -> list[int]:
    """K-polynomial numerator of R/(gens) for a monomial ideal (weights per variable)."""
    weights = tuple(weights)

    @lru_cache(maxsize=None)
    def rec(G: tuple) -> tuple:
        if not G:
            return (1,)
        supports = [frozenset(i for i, x in enumerate(m) if x) for m in G]
        if all(not (a & b) for k, a in enumerate(supports) for b in supports[k + 1:]):
            acc = [1]
            for m in G:
                d = sum(x * w for x, w in zip(m, weights))
                acc = _pmul(acc, [1] + [0] * (d - 1) + [-1])
            return tuple(acc)
        # pivot on the variable shared by the most generators
        counts = [0] * len(weights)
        for s in supports:
            for i in s:
                counts[i] += 1
        v = max(range(len(weights)), key=lambda i: (counts[i], -i))
        unit = tuple(1 if i == v else 0 for i in range(len(weights)))
        plus = _minimalize([m for m in G if m[v] == 0] + [unit])
        quot = _minimalize([tuple(x - 1 if i == v and x else x for i, x in enumerate(m)) for m in G])
        left = rec(plus)
        right = [0] * weights[v] + list(rec(quot))
        return tuple(_padd(left, right))

    if any(not any(m) for m in gens):
        return [0]
    return _trim(rec(_minimalize([tuple(m) for m in gens])))


def hilbert_series(I: Ideal) -> HilbertSeries:
    """Hilbert series of R/I from the leading-term ideal of a degrevlex basis."""
    if not I.is_homogeneous():
        raise NotHomogeneousError("Hilbert series needs a homogeneous ideal")
    lms = I.leading_monomials()
    num = monomial_numerator(lms, I.ring.weights)
    return HilbertSeries(tuple(num), tuple(I.ring.weights))
