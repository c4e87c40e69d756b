"""Random search for specializations of the generic complete intersection.

A candidate assigns a random signed monomial (or zero) to each w_p_j, with
weights chosen so that the p-th generator of I_X has the requested degree.
It is accepted when I_X is a complete intersection, the sections exist with
consecutive T-degrees and the kernel oracle equals the assembled presentation.

    python3 scripts/search_specialization.py -k 2 -n 2 --degrees 4,4,4 --seed 3
"""

from __future__ import annotations

import argparse
import random
import time

from typeii.groebner import ResourceBudgetExceeded, codimension, ideal_equal, step_budget
from typeii.poly import SubstitutionMap, two_by_two_minors
from typeii.unprojection import (
    GenericityError,
    Parameters,
    RelationLiftError,
    SectionsNotFound,
    assemble_presentation,
    base_ring,
    build_matrix_M,
    build_specialized_CI,
    compute_sections,
    generic_ring,
    kernel_oracle,
)


def monomials(ring, degree):
    """All exponent dicts of the given weighted degree."""
    names, weights = ring.names, ring.weights
    out = []

    def rec(i, left, cur):
        if left == 0:
            out.append(dict(cur))
            return
        if i == len(names):
            return
        for e in range(left // weights[i] + 1):
            if e:
                cur[names[i]] = e
            rec(i + 1, left - e * weights[i], cur)
            cur.pop(names[i], None)

    rec(0, degree, {})
    return out


def candidate(params, degrees, minors, base, rng, density):
    m = {}
    for p in range(1, params.nk):
        for j, u in enumerate(minors, 1):
            name = f"w_{p}_{j}"
            w = degrees[p - 1] - u.degree()
            if w < 0 or rng.random() > density:
                m[name] = "0"
                continue
            mono = rng.choice(monomials(base, w))
            m[name] = str(rng.choice([1, -1, 2])) + "".join(f"*{v}^{e}" for v, e in mono.items())
    return m


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("-k", type=int, required=True)
    ap.add_argument("-n", type=int, required=True)
    ap.add_argument("--degrees", required=True, help="comma separated degrees of the nk-1 generators")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=40)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--budget", type=int, default=200_000)
    args = ap.parse_args()

    params = Parameters(args.k, args.n)
    degrees = [int(d) for d in args.degrees.split(",")]
    if len(degrees) != params.nk - 1:
        ap.error(f"need {params.nk - 1} degrees")
    G, B = generic_ring(params), base_ring(params)
    minors = two_by_two_minors(build_matrix_M(params, B))
    rng = random.Random(args.seed)
    for trial in range(args.trials):
        m = candidate(params, degrees, minors, B, rng, args.density)
        shown = {a: b for a, b in m.items() if b != "0"}
        t0 = time.perf_counter()
        try:
            with step_budget(args.budget):
                data = build_specialized_CI(params, SubstitutionMap.from_mapping(G, B, m))
                if codimension(data.ix) != params.nk - 1:
                    print(f"{trial}: not a complete intersection")
                    continue
                compute_sections(data)
                pres = assemble_presentation(data)
                ok = ideal_equal(kernel_oracle(data), pres.ideal())
        except (GenericityError, SectionsNotFound, RelationLiftError, ResourceBudgetExceeded) as exc:
            print(f"{trial}: {type(exc).__name__}: {str(exc)[:120]}")
            continue
        dt = time.perf_counter() - t0
        print(f"{trial}: T-degrees {data.t_degrees()}, oracle {'EQUAL' if ok else 'UNEQUAL'}, "
              f"{dt:.1f}s, {shown}", flush=True)
        if ok:
            return 0
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
