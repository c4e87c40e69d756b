"""Command-line front end.

    typeii generate  -k 1 -n 2 [--spec FILE]
    typeii unproject -k 1 -n 2 --spec specs/std12.subst [--oracle]
    typeii verify    --suite lemma|presentation|codim|gorenstein|counterexample|all
    typeii hilbert   --ring "x0, x1, x2, T" --gen "x0*x2 - x1^2" ...

Exit codes: 0 ok, 1 check failed, 2 bad input, 3 step budget exhausted,
4 genericity precondition failed, 5 grading failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import verify as V
from .groebner import (
    Ideal,
    MonomialOrder,
    NotHomogeneousError,
    ResourceBudgetExceeded,
    default_budget,
    ideal_equal,
    step_budget,
)
from .hilbert import HilbertSeries, hilbert_series
from .poly import PolynomialSyntaxError, RingDescriptor, minor_column_pairs
from .specializations import (
    STANDARD,
    SubstitutionSyntaxError,
    parse_substitution,
)
from .unprojection import (
    GenericityError,
    Parameters,
    RelationLiftError,
    SectionsNotFound,
    UnprojectionData,
    assemble_presentation,
    build_generic_CI,
    build_specialized_CI,
    compute_sections,
    generic_ring,
    kernel_oracle,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_BUDGET, EXIT_GENERIC, EXIT_GRADING = range(6)
BUDGET_ENV = "TYPEII_STEP_BUDGET"
SUITES = ("lemma", "presentation", "codim", "gorenstein", "counterexample")
DESK_PAIRS = ((1, 2), (1, 3), (2, 2))


class InputError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str = ""
    k: int | None = None
    n: int | None = None
    spec: str | None = None
    order: str = "grevlex"
    budget: int | None = None
    format: str = "text"
    output: str | None = None
    oracle: bool = False
    suite: str = "all"
    kmax: int = 4
    nmax: int = 4
    timings: bool = False
    ring: str | None = None
    gens: list[str] | None = None
    ideal_file: str | None = None
    builtin: str | None = None

    def validate(self) -> None:
        if self.k is not None and self.k < 1:
            raise InputError(f"k must satisfy k >= 1, got k={self.k}")
        if self.n is not None and self.n < 2:
            raise InputError(f"n must satisfy n >= 2, got n={self.n}")
        if self.budget is not None and self.budget < 1:
            raise InputError(f"budget must be >= 1, got {self.budget}")
        if self.format not in ("text", "structured"):
            raise InputError(f"unknown output format {self.format!r}")
        if self.order not in ("grevlex", "lex"):
            raise InputError(f"unknown monomial order {self.order!r}")

    def params(self) -> Parameters:
        if self.k is None or self.n is None:
            raise InputError(f"{self.command} needs -k and -n")
        return Parameters(self.k, self.n)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

class Output:
    """Collects text lines and a structured document; writes exactly one of them."""

    def __init__(self, cfg: JobConfig):
        self.cfg = cfg
        self.lines: list[str] = []
        self.doc: dict = {"command": cfg.command}

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def put(self, key: str, value) -> None:
        self.doc[key] = value

    def flush(self) -> None:
        if self.cfg.format == "structured":
            text = json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        else:
            text = "\n".join(self.lines) + "\n"
        if self.cfg.output:
            Path(self.cfg.output).write_text(text)
        else:
            sys.stdout.write(text)


def _ring_doc(ring: RingDescriptor) -> list[list]:
    return [[name, w] for name, w in ring.variables]


def _report_doc(r: V.CheckReport, timings: bool) -> dict:
    d = r.to_dict()
    d.pop("extra", None)
    if not timings:
        d.pop("seconds", None)
    return d


def _report_line(r: V.CheckReport, timings: bool) -> str:
    line = r.line()
    return line if timings else line.rsplit(" [", 1)[0]


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def _builtin_spec(name: str):
    stem = Path(name).name.removesuffix(".subst")
    for specs in STANDARD.values():
        for s in specs:
            if s.ident == stem:
                return s
    return None


def load_spec(cfg: JobConfig, params: Parameters):
    """(substitution, label) from a file path or a built-in specialization name."""
    path = Path(cfg.spec)
    if path.is_file():
        text = path.read_text()
        label = path.stem
    else:
        builtin = _builtin_spec(cfg.spec)
        if builtin is None:
            raise InputError(f"specialization file not found: {cfg.spec}")
        if (builtin.k, builtin.n) != (params.k, params.n):
            raise InputError(f"{builtin.ident} is for (k, n) = ({builtin.k}, {builtin.n})")
        text = builtin.text()
        label = builtin.ident
    return parse_substitution(text, generic_ring(params)), label


def load_data(cfg: JobConfig) -> UnprojectionData:
    params = cfg.params()
    if cfg.spec is None:
        return build_generic_CI(params)
    hat, label = load_spec(cfg, params)
    try:
        return build_specialized_CI(params, hat, label=label)
    except ValueError as exc:
        if isinstance(exc, (GenericityError, NotHomogeneousError)):
            raise
        raise InputError(str(exc)) from exc


def _parse_ring(text: str) -> RingDescriptor:
    """``"x0, x1:2, T"``: comma separated names with optional ``:weight``."""
    variables = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, _, w = item.partition(":")
        try:
            variables.append((name.strip(), int(w) if w else 1))
        except ValueError as exc:
            raise InputError(f"bad weight in ring item {item!r}") from exc
    if not variables:
        raise InputError("empty ring")
    return RingDescriptor(tuple(variables))


def load_ideal(cfg: JobConfig) -> tuple[Ideal, str]:
    if cfg.builtin:
        if cfg.builtin == "twisted-cubic":
            ring = RingDescriptor.from_names(["x0", "x1", "x2", "T"])
            return V.twisted_cubic(ring, "T"), "twisted cubic"
        if cfg.builtin == "cuspidal-unprojection":
            return kernel_oracle(V.cuspidal_cubic_data()), "unprojection of the cuspidal cubic"
        raise InputError(f"unknown built-in ideal {cfg.builtin!r}")
    if cfg.ideal_file:
        lines = [ln.split("#", 1)[0].strip() for ln in Path(cfg.ideal_file).read_text().splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("ring:"):
            raise InputError(f"{cfg.ideal_file}: first line must be 'ring: x, y:2, ...'")
        ring = _parse_ring(lines[0][len("ring:"):])
        return Ideal(ring, [ring.parse(g) for g in lines[1:]]), cfg.ideal_file
    if cfg.ring is not None:
        ring = _parse_ring(cfg.ring)
        return Ideal(ring, [ring.parse(g) for g in cfg.gens or []]), "command line"
    if cfg.k is not None:
        data = load_data(cfg)
        return assemble_presentation(data).ideal(), f"presentation ({data.label or 'generic'})"
    raise InputError("hilbert needs --ring/--gen, --ideal-file, --builtin or -k/-n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_generate(cfg: JobConfig, out: Output) -> int:
    data = load_data(cfg)
    params = data.params
    pairs = minor_column_pairs(params.ncols)
    out.say(f"ring: {data.ambient}")
    out.say(f"matrix M ({data.M.rows} x {data.M.cols}):")
    for i in range(data.M.rows):
        out.say("  [" + ", ".join(str(e) for e in data.M.row(i)) + "]")
    out.say(f"minors ({len(data.minors)}):")
    for (p, q), u in zip(pairs, data.minors):
        out.say(f"  u[{p},{q}] = {u}")
    out.say(f"I_X generators ({len(data.ix.generators)}):")
    for idx, g in enumerate(data.ix.generators, start=1):
        out.say(f"  f^{idx} = {g}")
    out.say(f"denominator f = {data.f}")
    out.put("k", params.k)
    out.put("n", params.n)
    out.put("ring", _ring_doc(data.ambient))
    out.put("matrix", [[str(e) for e in data.M.row(i)] for i in range(data.M.rows)])
    out.put("minors", [{"columns": list(pq), "poly": str(u)} for pq, u in zip(pairs, data.minors)])
    out.put("ix", [str(g) for g in data.ix.generators])
    out.put("denominator", str(data.f))
    return EXIT_OK


def cmd_unproject(cfg: JobConfig, out: Output) -> int:
    data = load_data(cfg)
    nums = compute_sections(data)
    pres = assemble_presentation(data)
    degs = pres.t_degrees
    out.say(f"ring: {pres.ring}")
    out.say(f"denominator f = {data.f}")
    for p, g in enumerate(nums):
        out.say(f"s_{p} = ({g}) / f")
    out.say("T-degrees: " + ("(" + ", ".join(map(str, degs)) + ")" if degs else "ungraded"))
    groups: dict[str, list] = {}
    for label, g in pres.labeled():
        groups.setdefault(label.split("[")[0], []).append((label, g))
    for fam, items in groups.items():
        out.say(f"{fam} ({len(items)}):")
        for label, g in items:
            out.say(f"  {label} = {g}")
    counts = pres.counts()
    out.say("counts: " + ", ".join(f"{k}={v}" for k, v in counts.items())
            + f", non-I_X={len(pres.non_ix_generators())}")
    out.put("k", pres.params.k)
    out.put("n", pres.params.n)
    out.put("specialization", data.label or None)
    out.put("ring", _ring_doc(pres.ring))
    out.put("denominator", str(data.f))
    out.put("sections", [str(g) for g in nums])
    out.put("t_degrees", degs)
    out.put("generators", [{"label": label, "poly": str(g)} for label, g in pres.labeled()])
    out.put("counts", counts)
    status = EXIT_OK
    if cfg.oracle:
        K = kernel_oracle(data)
        order = MonomialOrder.named(cfg.order, pres.ring)
        equal = ideal_equal(K, pres.ideal(), order)
        out.say(f"oracle: {'EQUAL' if equal else 'UNEQUAL'}")
        out.put("oracle", "EQUAL" if equal else "UNEQUAL")
        status = EXIT_OK if equal else EXIT_CHECK
    return status


def _desk_pairs(cfg: JobConfig) -> list[Parameters]:
    if cfg.k is not None and cfg.n is not None:
        return [cfg.params()]
    return [Parameters(k, n) for k, n in DESK_PAIRS if k <= cfg.kmax and n <= cfg.nmax]


def _data_reports(params: Parameters, suite: str, cfg: JobConfig) -> list[V.CheckReport]:
    if cfg.spec is not None:
        try:
            cfg_one = JobConfig(**{**asdict(cfg), "k": params.k, "n": params.n})
            data = load_data(cfg_one)
            pres = assemble_presentation(data)
            reasons = []
        except (GenericityError, SectionsNotFound, RelationLiftError) as exc:
            data, pres, reasons = None, None, [str(exc)]
    else:
        data, pres, reasons = V.load_standard(params, cfg.budget)
    if data is None:
        return [V.CheckReport(suite, V.SKIP, params.k, params.n,
                              detail="; ".join(reasons) or "no usable specialization")]
    if suite == "presentation":
        return [V.check_nonprincipal(data, cfg.budget), V.check_presentation(data, pres, cfg.budget),
                V.check_normalization(pres, data.label)]
    if suite == "codim":
        return V.check_codimensions(data, pres, cfg.budget)
    return [V.check_gorenstein_symmetry(pres, data.label)]


def cmd_verify(cfg: JobConfig, out: Output) -> int:
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    reports: list[V.CheckReport] = []
    for suite in suites:
        if suite == "lemma":
            kmax = cfg.k if cfg.k is not None else cfg.kmax
            nmax = cfg.n if cfg.n is not None else cfg.nmax
            reports += V.check_lemma_identities(kmax, nmax)
            controls = V.check_lemma_identities(kmax, nmax, mutate=True)
            caught = sum(r.status == V.FAIL for r in controls)
            reports.append(V.CheckReport(
                "identity:negative-controls", V.PASS if caught == len(controls) else V.FAIL,
                detail=f"{caught}/{len(controls)} mutated identities rejected",
                witness=None if caught == len(controls) else f"{len(controls) - caught} mutations accepted"))
        elif suite == "counterexample":
            reports.append(V.check_cuspidal_counterexample())
        else:
            for params in _desk_pairs(cfg):
                reports += _data_reports(params, suite, cfg)
    for r in reports:
        out.say(_report_line(r, cfg.timings))
    failed = sum(r.status == V.FAIL for r in reports)
    skipped = sum(r.status == V.SKIP for r in reports)
    out.say(f"summary: {len(reports) - failed - skipped} passed, {failed} failed, {skipped} skipped")
    out.put("reports", [_report_doc(r, cfg.timings) for r in reports])
    out.put("summary", {"passed": len(reports) - failed - skipped, "failed": failed, "skipped": skipped})
    return EXIT_CHECK if failed else EXIT_OK


def cmd_hilbert(cfg: JobConfig, out: Output) -> int:
    ideal, source = load_ideal(cfg)
    raw: HilbertSeries = hilbert_series(ideal)
    hs = raw.reduced()
    den = ", ".join(map(str, hs.denominator_weights)) or "none"
    values = raw.coefficients(10)
    out.say(f"ideal: {source}")
    out.say(f"ring: {ideal.ring}")
    out.say(f"numerator: {hs.numerator_str()}")
    out.say(f"denominator weights: {den}")
    out.say(f"K-polynomial: {raw.numerator_str()}")
    out.say("hilbert function: " + ", ".join(map(str, values)))
    out.say(f"palindromic: {'yes' if hs.is_palindromic() else 'no'}")
    out.put("ring", _ring_doc(ideal.ring))
    out.put("numerator", list(hs.numerator))
    out.put("numerator_text", hs.numerator_str())
    out.put("denominator_weights", list(hs.denominator_weights))
    out.put("k_polynomial", list(raw.numerator))
    out.put("hilbert_function", values)
    out.put("palindromic", hs.is_palindromic())
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "unproject": cmd_unproject, "verify": cmd_verify,
            "hilbert": cmd_hilbert}


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-k", type=int)
    common.add_argument("-n", type=int)
    common.add_argument("--spec", help="substitution file, or a built-in name such as std12")
    common.add_argument("--order", choices=("grevlex", "lex"))
    common.add_argument("--budget", type=int, help=f"S-pair budget (env {BUDGET_ENV})")
    common.add_argument("--format", choices=("text", "structured"))
    common.add_argument("--output", "-o")
    common.add_argument("--config", help="JSON file with the same keys as the flags")
    common.add_argument("--timings", action="store_true", default=None)

    parser = argparse.ArgumentParser(prog="typeii", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="matrix M, minors, complete intersection")
    p = sub.add_parser("unproject", parents=[common], help="presentation of the unprojection")
    p.add_argument("--oracle", action="store_true", default=None)
    p = sub.add_parser("verify", parents=[common], help="run a check suite")
    p.add_argument("--suite", choices=SUITES + ("all",))
    p.add_argument("--kmax", type=int)
    p.add_argument("--nmax", type=int)
    p = sub.add_parser("hilbert", parents=[common], help="Hilbert series of a quotient")
    p.add_argument("--ring", help='e.g. "x0, x1, x2:2"')
    p.add_argument("--gen", dest="gens", action="append")
    p.add_argument("--ideal-file")
    p.add_argument("--builtin", choices=("twisted-cubic", "cuspidal-unprojection"))
    return parser


def resolve_config(args: argparse.Namespace, environ=os.environ) -> JobConfig:
    """Flags > environment (budget only) > config file > defaults."""
    values: dict = {}
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from exc
        known = {f.name for f in fields(JobConfig)}
        unknown = set(loaded) - known
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    if environ.get(BUDGET_ENV):
        try:
            values["budget"] = int(environ[BUDGET_ENV])
        except ValueError as exc:
            raise InputError(f"{BUDGET_ENV} must be an integer") from exc
    for key, val in vars(args).items():
        if key != "config" and val is not None:
            values[key] = val
    cfg = JobConfig(**values)
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        out = Output(cfg)
        with step_budget(cfg.budget or default_budget()):
            code = COMMANDS[cfg.command](cfg, out)
        out.flush()
        return code
    except (InputError, SubstitutionSyntaxError, PolynomialSyntaxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GenericityError as exc:
        print(f"error: genericity check '{exc.check}' failed: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except (SectionsNotFound, RelationLiftError) as exc:
        print(f"error: genericity check failed: {exc}", file=sys.stderr)
        return EXIT_GENERIC
    except NotHomogeneousError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRADING
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
