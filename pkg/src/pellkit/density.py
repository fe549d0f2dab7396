"""Counting solvable negative Pell equations over discriminants without
prime factors = 3 mod 4, and the constants of Redei and Stevenhagen.

Scans are split into chunks [lo, hi] whose reports merge exactly, so a long
run can be resumed or spread over worker processes without changing the
result.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction

from pellkit.arith import distinct_primes, fundamental_discriminant, is_fundamental_discriminant, is_squarefree
from pellkit.errors import DomainError, InternalError, ResourceError

NEG_PELL_GUARD = 10**8
LEGENDRE_GUARD = 10**7
CONVENTIONS = ("fundamental", "radicand")


def _product(precision: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = precision + 20
        tol = Decimal(10) ** (-precision - 2)
        prod, j = Decimal(1), 1
        while True:
            term = Decimal(2) ** (1 - 2 * j)
            prod *= 1 - term
            # the tail factors change the product by less than sum of the remaining terms
            if term / 3 < tol:
                return prod
            j += 1


def _truncate(x: Decimal, precision: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = precision + 20
        return x.quantize(Decimal(10) ** -precision, rounding=ROUND_DOWN)


def alpha(precision: int = 6) -> Decimal:
    """prod_{j >= 1} (1 - 2^(1-2j)), truncated to `precision` decimals."""
    if not 0 <= precision <= 50:
        raise DomainError("precision must be in [0, 50]")
    return _truncate(_product(precision), precision)


def one_minus_alpha(precision: int = 6) -> Decimal:
    if not 0 <= precision <= 50:
        raise DomainError("precision must be in [0, 50]")
    with localcontext() as ctx:
        ctx.prec = precision + 20
        return _truncate(1 - _product(precision), precision)


@dataclass(frozen=True)
class DensityReport:
    lo: int
    X: int
    total: int
    solvable: int
    convention: str = "fundamental"
    family: str = "negative-pell"
    e4_counts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 <= self.solvable <= self.total:
            raise InternalError("solvable count out of range")

    @property
    def ratio(self) -> Fraction | None:
        return Fraction(self.solvable, self.total) if self.total else None

    def merge(self, other: "DensityReport") -> "DensityReport":
        """Concatenate adjacent ranges [lo, X] + [X + 1, other.X]."""
        if other.lo != self.X + 1 or (other.convention, other.family) != (self.convention, self.family):
            raise DomainError("reports are not adjacent scans of the same family")
        counts = dict(self.e4_counts)
        for k, v in other.e4_counts.items():
            counts[k] = counts.get(k, 0) + v
        return replace(
            self,
            X=other.X,
            total=self.total + other.total,
            solvable=self.solvable + other.solvable,
            e4_counts=dict(sorted(counts.items())),
        )

    def summary(self) -> dict:
        r = self.ratio
        a = alpha(6)
        return {
            "family": self.family,
            "convention": self.convention,
            "lo": self.lo,
            "X": self.X,
            "total": self.total,
            "solvable": self.solvable,
            "ratio": f"{r.numerator}/{r.denominator}" if r else None,
            "ratio_decimal": f"{float(r):.6f}" if r else None,
            "alpha_ref": str(a),
            "one_minus_alpha_ref": str(one_minus_alpha(6)),
            "exceeds_alpha": bool(r is not None and r > Fraction(a)),
            "e4_counts": {str(k): v for k, v in self.e4_counts.items()},
        }


def _no_prime_3_mod_4(n: int) -> bool:
    return all(p % 4 != 3 for p in distinct_primes(n))


def in_family(n: int, convention: str = "fundamental") -> bool:
    """Membership in D: discriminants (or radicands) > 1 with no prime factor = 3 mod 4."""
    if convention == "fundamental":
        return n > 1 and is_fundamental_discriminant(n) and _no_prime_3_mod_4(n)
    if convention == "radicand":
        return n > 1 and is_squarefree(n) and _no_prime_3_mod_4(n)
    raise DomainError(f"unknown convention {convention!r}")


def _certified_negative(m: int) -> bool:
    from pellkit.pell import fundamental_unit

    eps = fundamental_unit(m)  # PellSolution re-checks x^2 - m y^2 = norm
    if eps.x * eps.x - m * eps.y * eps.y != eps.norm:
        raise InternalError(f"unit of {m} fails its norm check")
    return eps.norm == -1


def _scan_chunk(args: tuple[int, int, str]) -> DensityReport:
    from pellkit.redei import e4

    lo, hi, convention = args
    total = solvable = 0
    counts: dict[int, int] = {}
    for n in range(max(lo, 2), hi + 1):
        if not in_family(n, convention):
            continue
        if convention == "fundamental":
            disc, m = n, (n if n % 2 else n // 4)
        else:
            disc, m = fundamental_discriminant(n), n
        total += 1
        solvable += _certified_negative(m)
        k = e4(disc)
        counts[k] = counts.get(k, 0) + 1
    return DensityReport(lo, hi, total, solvable, convention, "negative-pell", dict(sorted(counts.items())))


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("PELLKIT_WORKERS", "1")))
    except ValueError:
        return 1


def _chunks(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


def _run(fn, jobs, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _merge_all(parts: list[DensityReport]) -> DensityReport:
    out = parts[0]
    for p in parts[1:]:
        out = out.merge(p)
    return out


def scan_negative_pell_chunks(
    X: int, convention: str = "fundamental", chunk: int = 10**4, lo: int = 1, workers: int = 1
) -> list[DensityReport]:
    if X > NEG_PELL_GUARD:
        raise ResourceError(f"X = {X} exceeds guard {NEG_PELL_GUARD}")
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown convention {convention!r}")
    jobs = [(a, b, convention) for a, b in _chunks(lo, X, chunk)]
    return _run(_scan_chunk, jobs, workers)


def scan_negative_pell(
    X: int, convention: str = "fundamental", chunk: int = 10**4, lo: int = 1, workers: int = 1
) -> DensityReport:
    """Exact counts of D and D(-1) in [lo, X]."""
    return _merge_all(scan_negative_pell_chunks(X, convention, chunk, lo, workers))


def in_legendre_family(d: int) -> bool:
    """d = 1 mod 8 squarefree, d > 1, every prime factor = +-1 mod 8."""
    return d > 1 and d % 8 == 1 and is_squarefree(d) and all(p % 8 in (1, 7) for p in distinct_primes(d))


def legendre_2_solvable(d: int, certify: bool = False) -> bool:
    """Is 2x^2 - d y^2 = 1 solvable? Decided by the descent for A = 2d.

    The fundamental solution of x^2 - 2d y^2 = 1 names the one solvable
    nontrivial square class, with an explicit witness. With ``certify`` every
    other equation also gets its own unsolvability certificate, which costs
    a walk through the residues of the unit powers mod 4d.
    """
    from pellkit.descent import DescentEquation, descent_from_fundamental, verify_uniqueness

    if certify:
        rep = verify_uniqueness(2 * d)
        return rep.status[DescentEquation(1, 2, d)].startswith("solvable")
    eq, r, s = descent_from_fundamental(2 * d)
    return eq.selmer_class() == 2


def _legendre_chunk(args: tuple[int, int, bool]) -> DensityReport:
    lo, hi, certify = args
    total = solvable = 0
    for d in range(max(lo, 2), hi + 1):
        if in_legendre_family(d):
            total += 1
            solvable += legendre_2_solvable(d, certify)
    return DensityReport(lo, hi, total, solvable, "fundamental", "legendre-2")


def scan_legendre_2(
    X: int, chunk: int = 10**4, lo: int = 1, workers: int = 1, certify: bool = False
) -> DensityReport:
    if X > LEGENDRE_GUARD:
        raise ResourceError(f"X = {X} exceeds guard {LEGENDRE_GUARD}")
    jobs = [(a, b, certify) for a, b in _chunks(lo, X, chunk)]
    return _merge_all(_run(_legendre_chunk, jobs, workers))


def chunks_to_csv(parts: list[DensityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lo", "hi", "total", "solvable"])
    for p in parts:
        w.writerow([p.lo, p.X, p.total, p.solvable])
    return buf.getvalue()


def report_to_json(report: DensityReport) -> str:
    return json.dumps(report.summary(), indent=2, sort_keys=True)
