"""Wall-clock timings of each pipeline stage for the standard specializations.

    python3 scripts/benchmark.py            # (1,2) and (1,3)
    python3 scripts/benchmark.py --pair 2,2 --no-oracle
"""

import argparse
import time

from typeii.groebner import codimension, ideal_equal
from typeii.hilbert import hilbert_series
from typeii.specializations import standard_specializations
from typeii.unprojection import (
    Parameters,
    assemble_presentation,
    build_specialized_CI,
    compute_sections,
    kernel_oracle,
)


def stage(label, fn, show=str):
    t0 = time.perf_counter()
    value = fn()
    print(f"  {label:<14} {time.perf_counter() - t0:8.2f}s  {show(value)}", flush=True)
    return value


def bench(params, oracle):
    spec = standard_specializations(params)[0]
    print(f"(k, n) = ({params.k}, {params.n}) with {spec.ident}")
    data = stage("build", lambda: build_specialized_CI(params, spec.substitution(), label=spec.ident),
                 lambda d: f"{len(d.ix.generators)} generators of I_X")
    stage("sections", lambda: data.t_degrees() if compute_sections(data) else None)
    pres = stage("presentation", lambda: assemble_presentation(data), lambda p: p.counts())
    stage("codimension", lambda: codimension(pres.ideal()))
    stage("hilbert", lambda: hilbert_series(pres.ideal()).reduced().numerator_str())
    if oracle:
        stage("oracle", lambda: ideal_equal(kernel_oracle(data), pres.ideal()))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pair", action="append", help="k,n (repeatable)")
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()
    pairs = [tuple(map(int, p.split(","))) for p in args.pair] if args.pair else [(1, 2), (1, 3)]
    for k, n in pairs:
        bench(Parameters(k, n), not args.no_oracle)


if __name__ == "__main__":
    main()
