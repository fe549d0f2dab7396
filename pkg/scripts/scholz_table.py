"""Scholz case labels for pairs of prime discriminants.

For each pair (D1, D2) with D1 D2 <= bound, print the symbols that decide
the case together with h, h+ and the unit norm of Q(sqrt(D1 D2)), and a
tally of the cases.
"""

import argparse
from collections import Counter

from pellkit.arith import primes_up_to
from pellkit.criteria import scholz_classify


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=3000)
    ap.add_argument("--rows", type=int, default=40, help="rows to print (0 for none)")
    args = ap.parse_args(argv)
    pd = [8] + [p for p in primes_up_to(args.max) if p % 4 == 1]
    tally, disagree, shown = Counter(), [], 0
    print(f"{'D1':>5} {'D2':>6} {'case':>5} {'h':>4} {'h+':>4} {'N':>3}  q12 q21")
    for i, a in enumerate(pd):
        for b in pd[i + 1 :]:
            if a * b > args.max:
                break
            v = scholz_classify(a, b)
            tally[v.prediction] += 1
            if not v.agrees:
                disagree.append(v.as_record())
            if shown < args.rows:
                x = v.inputs
                print(
                    f"{a:>5} {b:>6} {v.prediction:>5} {x['h']:>4} {x['h_plus']:>4} {x['norm']:>3}"
                    f"  {x.get('quartic_12', ''):>3} {x.get('quartic_21', ''):>3}"
                )
                shown += 1
    print(f"cases: {dict(sorted(tally.items()))}; disagreements: {len(disagree)}")
    for rec in disagree[:10]:
        print(rec)


if __name__ == "__main__":
    main()
