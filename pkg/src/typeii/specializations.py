"""Substitution files and the documented standard specializations.

File format, one assignment per line::

    # comment
    w_1_2 = a_2_1
    w_1_5 = -a_1_1^2 + 2*z

Unlisted source variables map to themselves.  The target ring holds the
unlisted source variables (same weights), any listed variable that is
referenced on a right-hand side, and new names (weight 1) in order of
first appearance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import PolynomialSyntaxError, RingDescriptor, SubstitutionMap, parse_polynomial
from .unprojection import Parameters, generic_ring

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_LHS = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=")


class SubstitutionSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _assignments(text: str) -> list[tuple[int, str, int, int, str]]:
    """(line, name, name column, rhs column, rhs text) per non-blank line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LHS.match(line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise SubstitutionSyntaxError("expected 'name = polynomial'", lineno, col)
        rhs = line[m.end():]
        if not rhs.strip():
            raise SubstitutionSyntaxError("empty right-hand side", lineno, m.end() + 1)
        out.append((lineno, m.group(1), m.start(1) + 1, m.end() + 1, rhs))
    return out


def parse_substitution(text: str, source: RingDescriptor) -> SubstitutionMap:
    rows = _assignments(text)
    listed = {}
    for lineno, name, ncol, _, _ in rows:
        if name not in source:
            raise SubstitutionSyntaxError(f"unknown variable {name!r}", lineno, ncol)
        if name in listed:
            raise SubstitutionSyntaxError(f"{name!r} assigned twice", lineno, ncol)
        listed[name] = lineno
    referenced = []
    for *_, rhs in rows:
        for ident in _IDENT.findall(rhs):
            if ident not in referenced:
                referenced.append(ident)
    variables = [v for v in source.variables if v[0] not in listed or v[0] in referenced]
    known = {v[0] for v in variables}
    variables += [(name, 1) for name in referenced if name not in known]
    target = RingDescriptor(tuple(variables))
    mapping = {}
    for lineno, name, _, col, rhs in rows:
        try:
            mapping[name] = parse_polynomial(rhs, target)
        except PolynomialSyntaxError as exc:
            raise SubstitutionSyntaxError(exc.message, lineno, col + exc.column - 1) from exc
    return SubstitutionMap.from_mapping(source, target, mapping)


def format_substitution(hat: SubstitutionMap) -> str:
    lines = []
    for name, img in zip(hat.source.names, hat.assignment):
        if name in hat.target and img == hat.target.gen(name):
            continue
        lines.append(f"{name} = {img}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Specialization:
    """A named substitution for the w's of the generic complete intersection."""

    ident: str
    k: int
    n: int
    assignments: tuple[tuple[str, str], ...]
    note: str = ""

    @property
    def params(self) -> Parameters:
        return Parameters(self.k, self.n)

    def text(self) -> str:
        """Substitution-file form: the listed w's plus zeros for every other w."""
        listed = dict(self.assignments)
        lines = [f"# {self.ident}: {self.note}" if self.note else f"# {self.ident}"]
        for name in generic_ring(self.params).names:
            if name.startswith("w_"):
                lines.append(f"{name} = {listed.get(name, '0')}")
        return "\n".join(lines) + "\n"

    def substitution(self) -> SubstitutionMap:
        return parse_substitution(self.text(), generic_ring(self.params))


# Every w not listed is sent to 0.  Minor indices follow the lexicographic
# column-pair order (1,2), (1,3), ..., so for n = 2, k = 1: u_2 = minor(1,3),
# u_3 = minor(1,4), u_5 = minor(2,4).
STANDARD: dict[tuple[int, int], list[Specialization]] = {
    (1, 2): [
        Specialization("std12", 1, 2, (("w_1_2", "a_2_1"), ("w_1_3", "a_2_2")),
                       "F = a21*u13 + a22*u14, degree 6, f = u13"),
        Specialization("std12-b", 1, 2, (("w_1_2", "z"), ("w_1_3", "a_1_2^2"), ("w_1_5", "a_1_1^2")),
                       "F = z*u13 + a12^2*u14 + a11^2*u24, degree 6"),
    ],
    (1, 3): [
        Specialization("std13", 1, 3, (
            ("w_1_1", "-a_1_3"), ("w_1_2", "-a_1_2"), ("w_1_5", "-1"), ("w_1_8", "-1"),
            ("w_1_10", "-1"), ("w_1_11", "2"), ("w_2_3", "2"), ("w_2_4", "-1")),
            "two generators of degree 4"),
    ],
    (2, 2): [
        Specialization("std22", 2, 2, (
            ("w_1_1", "-a_1_2"), ("w_1_2", "-1"), ("w_1_7", "-1"), ("w_2_3", "-1"),
            ("w_2_7", "-1"), ("w_3_1", "2*a_2_2"), ("w_3_5", "2"), ("w_3_6", "-a_1_2")),
            "three generators, sections of t-degree 1, 2, 3"),
    ],
}


def standard_specializations(params: Parameters) -> list[Specialization]:
    return list(STANDARD.get((params.k, params.n), []))
