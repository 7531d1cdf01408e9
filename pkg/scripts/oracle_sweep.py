#!/usr/bin/env python3
"""Exercise the brute-force oracle against the closed forms on a c-grid.

Prints coefficient-recovery matches for every catalog model and a finite-k
convergence table for J_k -> J^NA. Exits nonzero if any configuration
mismatches (which a correct build never does).
"""

import argparse
import sys
from fractions import Fraction

from logklab.exactnum import decimal_string
from logklab.normalcone import jna_normal_cone
from logklab.pairmodel import CATALOG
from logklab.weightoracle import HilbertModel, jna_finite_k, oracle_report

MODELS = {
    "P2-line": HilbertModel.projective_space(2),
    "P3-hyperplane": HilbertModel.projective_space(3),
    "P4-hyperplane": HilbertModel.projective_space(4),
    "P1xP1-diag": HilbertModel.product_p1p1(),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cs", nargs="*", type=Fraction,
                        default=[Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)])
    parser.add_argument("--convergence-k", type=int, default=24,
                        help="largest k in the J_k convergence table")
    args = parser.parse_args()

    failures = 0
    for name, model in MODELS.items():
        pair = CATALOG[name].pair
        for c in args.cs:
            report = oracle_report(pair, model, c)
            status = "ok" if report["match"] else "MISMATCH"
            print(f"{name:<16} c = {str(c):>5}  recovery {status}")
            failures += 0 if report["match"] else 1

    print()
    pair = CATALOG["P2-line"].pair
    model = MODELS["P2-line"]
    c = Fraction(1, 2)
    limit = jna_normal_cone(pair, c)
    print(f"J^NA(P2-line, c=1/2) = {limit} = {decimal_string(limit)}")
    for k in range(2, args.convergence_k + 1, 2):
        jk = jna_finite_k(model, c, k)
        gap = jk - limit
        print(f"  k = {k:>3}: J_k = {str(jk):>10} ({decimal_string(jk)}), gap = {decimal_string(gap)}")

    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
