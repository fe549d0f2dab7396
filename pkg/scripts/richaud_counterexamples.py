"""Search for failures of Richaud's four-prime statements.

All four primes are = 5 mod 8. Every ordering of each tuple is tried,
since the hypotheses are not symmetric. For each failing tuple the script
prints d, the Redei 4-rank of d and whether x^2 - d y^2 = -1 is solvable.
"""

import argparse
import itertools
from collections import Counter

from pellkit.arith import primes_up_to
from pellkit.criteria import richaud
from pellkit.redei import e4
from pellkit.sweeps import _bounded_tuples


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=10**6, help="bound on the product")
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args(argv)
    f5 = [p for p in primes_up_to(args.max // (5 * 13 * 29)) if p % 8 == 5]
    applicable, failed = Counter(), Counter()
    examples = {c: [] for c in ("S1", "S2", "S3")}
    for t in _bounded_tuples(f5, 4, args.max):
        for perm in itertools.permutations(t):
            for clause in examples:
                v = richaud(perm, clause)
                if not v.applicable:
                    continue
                applicable[clause] += 1
                if not v.agrees:
                    failed[clause] += 1
                    if len(examples[clause]) < args.show:
                        d = v.inputs["d"]
                        examples[clause].append((perm, d, e4(d), v.ground_truth))
    for clause, ex in examples.items():
        print(f"{clause}: {failed[clause]} of {applicable[clause]} applicable orderings fail")
        for perm, d, rank4, solvable in ex:
            print(f"    primes {perm}  d = {d}  e4 = {rank4}  solvable = {solvable}")


if __name__ == "__main__":
    main()
