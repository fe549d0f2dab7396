"""Negative Pell density over discriminants free of primes = 3 mod 4.

Prints the exact ratio at a ladder of bounds next to the constants alpha
and 1 - alpha, plus the 4-rank distribution of the family. Optional CSV
output holds one row per chunk so runs can be merged or resumed.
"""

import argparse
import time

from pellkit.density import alpha, chunks_to_csv, default_workers, one_minus_alpha, scan_negative_pell_chunks


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=10**5)
    ap.add_argument("--chunk", type=int, default=10**4)
    ap.add_argument("--convention", choices=("fundamental", "radicand"), default="fundamental")
    ap.add_argument("--workers", type=int, default=default_workers())
    ap.add_argument("--csv", help="write per-chunk counts here")
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    parts = scan_negative_pell_chunks(args.max, args.convention, args.chunk, workers=args.workers)
    elapsed = time.perf_counter() - t0
    print(f"alpha = {alpha(6)}   1 - alpha = {one_minus_alpha(6)}")
    print(f"{'X':>10} {'|D|':>8} {'|D(-1)|':>8} {'ratio':>9}")
    acc = parts[0]
    rows = [acc]
    for p in parts[1:]:
        acc = acc.merge(p)
        rows.append(acc)
    for r in rows:
        print(f"{r.X:>10} {r.total:>8} {r.solvable:>8} {float(r.ratio):>9.6f}")
    print(f"4-rank counts: {acc.e4_counts}")
    share0 = acc.e4_counts.get(0, 0) / acc.total
    print(f"share with e4 = 0 (always solvable): {share0:.6f}")
    print(f"scan time {elapsed:.1f}s with {args.workers} worker(s)")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(chunks_to_csv(parts))


if __name__ == "__main__":
    main()
