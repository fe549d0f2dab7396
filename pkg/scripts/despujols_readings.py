"""Tabulate candidate readings of the rule N(eps) = (-1)^(t - r).

t is the number of ramified primes. The rule leaves r open, so two
readings are compared with the actual norm of the fundamental unit:

  count : r = number of wide ideal classes containing an ambiguous ideal
  rank  : r = log2 of that number (the 2-rank of the subgroup they form)

Nothing is asserted; the script prints agreement counts and the first
disagreements for each reading.
"""

import argparse
import math

from pellkit.arith import distinct_primes, fundamental_discriminants
from pellkit.forms import BinaryQuadraticForm as Form
from pellkit.forms import FormClassGroup
from pellkit.pell import maximal_order_unit


def ambiguous_form(D: int, b: int) -> Form:
    """A form of discriminant D representing the ambiguous ideal of norm b."""
    for B in range(0, 2 * b + 1):
        if B % 2 == D % 2 and B % b == 0 and (B * B - D) % (4 * b) == 0:
            return Form(b, B, (B * B - D) // (4 * b))
    raise ValueError((D, b))


def wide_ambiguous_classes(D: int) -> int:
    G = FormClassGroup(D)
    k = D % 2
    neg = G.index(Form(-1, k, (D - k) // 4))
    ps = distinct_primes(D)
    seen = set()
    for mask in range(1 << len(ps)):
        b = math.prod(p for i, p in enumerate(ps) if mask >> i & 1)
        c = G.index(ambiguous_form(D, b))
        seen.add(frozenset((c, G.mul(c, neg))))
    return len(seen)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=3000)
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args(argv)
    agree = {"count": 0, "rank": 0}
    misses = {"count": [], "rank": []}
    total = 0
    for D in fundamental_discriminants(5, args.max):
        t = len(distinct_primes(D))
        T, U = maximal_order_unit(D)
        norm = (T * T - D * U * U) // 4
        r_count = wide_ambiguous_classes(D)
        readings = {"count": r_count, "rank": r_count.bit_length() - 1}
        total += 1
        for name, r in readings.items():
            if (-1) ** (t - r) == norm:
                agree[name] += 1
            elif len(misses[name]) < args.show:
                misses[name].append((D, t, r, norm))
    print(f"fundamental discriminants 5..{args.max}: {total}")
    for name in agree:
        print(f"  reading {name:5s}: {agree[name]}/{total} agree; first misses (D, t, r, N): {misses[name]}")


if __name__ == "__main__":
    main()
