"""Redei matrices over GF(2), 4-ranks and C4-splittings.

Matrices are stored as tuples of row bitmasks (bit j of row i is entry
(i, j)). The Redei matrix has entry (i, j) = 1 iff (d_j / p_i) = -1 for
i != j, and diagonal entries making every row sum to zero. Its left kernel
is the set of C4-splittings. When every prime discriminant is positive
the matrix is symmetric and coincides with the transposed convention
(d_i / p_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from pellkit.arith import (
    fundamental_discriminant,
    is_prime,
    is_squarefree,
    kronecker,
    prime_discriminant_factorization,
)
from pellkit.errors import DomainError, TheoremViolation


@dataclass(frozen=True)
class F2Matrix:
    n: int
    rows: tuple[int, ...]
    ncols: int | None = None

    @property
    def cols(self) -> int:
        return self.n if self.ncols is None else self.ncols

    @classmethod
    def from_lists(cls, entries) -> "F2Matrix":
        entries = [list(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        rows = tuple(sum((int(x) & 1) << j for j, x in enumerate(r)) for r in entries)
        return cls(len(rows), rows, None if ncols == len(rows) else ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "F2Matrix":
        return F2Matrix.from_lists(list(zip(*self.to_lists()))) if self.rows else self

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        return F2Matrix(self.n, tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)


def identity(n: int) -> F2Matrix:
    return F2Matrix(n, tuple(1 << i for i in range(n)))


def f2_rank(m: F2Matrix | list[int]) -> int:
    rows = list(m.rows if isinstance(m, F2Matrix) else m)
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def in_column_space(m: F2Matrix, v: int) -> bool:
    """True iff the bit vector v lies in the image of m."""
    t = m.transpose()
    cols = list(t.rows)
    return f2_rank(cols) == f2_rank(cols + [v])


def redei_matrix(d: int) -> F2Matrix:
    fac = prime_discriminant_factorization(d)
    ds, ps = fac.values, fac.primes
    n = fac.n
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if i != j and kronecker(ds[j], ps[i]) == -1:
                row |= 1 << j
        if bin(row).count("1") % 2:
            row |= 1 << i
        rows.append(row)
    m = F2Matrix(n, tuple(rows))
    assert f2_rank(m) <= max(n - 1, 0)
    return m


def e4(d: int) -> int:
    """4-rank of the strict class group, n - 1 - rank R(d)."""
    m = redei_matrix(d)
    return m.n - 1 - f2_rank(m)


@dataclass(frozen=True)
class C4Splitting:
    """d = delta1 * delta2; delta1 carries the first prime discriminant of d."""

    delta1: int
    delta2: int

    @property
    def d(self) -> int:
        return self.delta1 * self.delta2

    def as_set(self) -> frozenset[int]:
        return frozenset((self.delta1, self.delta2))

    def is_trivial(self) -> bool:
        return 1 in (self.delta1, self.delta2)


def _subset_product(values, mask: int) -> int:
    out = 1
    for i, v in enumerate(values):
        if mask >> i & 1:
            out *= v
    return out


def splitting_from_mask(d: int, mask: int) -> C4Splitting:
    fac = prime_discriminant_factorization(d)
    full = (1 << fac.n) - 1
    if not mask & 1:
        mask ^= full
    return C4Splitting(_subset_product(fac.values, mask), _subset_product(fac.values, full ^ mask))


def is_c4_splitting(d: int, delta1: int, delta2: int) -> bool:
    if delta1 * delta2 != d:
        return False
    fac = prime_discriminant_factorization(d)
    for p in fac.primes:
        other = delta2 if delta1 % p == 0 else delta1
        if kronecker(other, p) != 1:
            return False
    return True


def enumerate_c4_splittings(d: int) -> list[C4Splitting]:
    """All unordered C4-splittings of d, trivial one first."""
    fac = prime_discriminant_factorization(d)
    out = []
    for half in range(1 << (fac.n - 1)):
        mask = (half << 1) | 1
        s = splitting_from_mask(d, mask)
        if is_c4_splitting(d, s.delta1, s.delta2):
            out.append(s)
    out.sort(key=lambda s: (not s.is_trivial(), abs(s.delta2), s.delta2))
    return out


def splitting_product(s1: C4Splitting, s2: C4Splitting) -> C4Splitting:
    d = s1.d
    if s2.d != d:
        raise DomainError("splittings of different discriminants")
    g = math.gcd(s1.delta1, s2.delta1)
    new1 = s1.delta1 * s2.delta1 // (g * g)
    fac = prime_discriminant_factorization(d)
    mask = sum(1 << i for i, p in enumerate(fac.primes) if new1 % p == 0)
    s = splitting_from_mask(d, mask)
    if _subset_product(fac.values, mask) != new1:
        raise TheoremViolation(f"product {new1} is not a product of prime discriminants of {d}")
    if not is_c4_splitting(d, s.delta1, s.delta2):
        raise TheoremViolation(f"{s} is not a C4-splitting of {d}")
    return s


def damey_payan_check(m: int) -> dict:
    """r4+(Q(sqrt m)) <= r4(Q(sqrt -m)) <= r4+(Q(sqrt m)) + 1."""
    if m <= 1 or not is_squarefree(m):
        raise DomainError(f"m = {m} must be squarefree and > 1")
    dp, dm = fundamental_discriminant(m), fundamental_discriminant(-m)
    rp, rm = e4(dp), e4(dm)
    report = {"m": m, "disc_plus": dp, "disc_minus": dm, "r4_plus": rp, "r4_minus": rm}
    if not rp <= rm <= rp + 1:
        raise TheoremViolation(f"Damey-Payan inequality fails for m = {m}", report)
    return report


def kingan_tournament(primes) -> tuple[F2Matrix, int]:
    """Tournament matrix A and vector v (bitmask) for primes = 3 mod 4."""
    primes = tuple(primes)
    n = len(primes)
    if len(set(primes)) != n or any(p % 4 != 3 or not is_prime(p) for p in primes):
        raise DomainError("need distinct primes = 3 mod 4")
    d = math.prod(primes)
    rows = []
    for i, pi in enumerate(primes):
        row = 0
        for j, pj in enumerate(primes):
            if i != j:
                sym = kronecker(pj, pi)
            else:
                sym = (-1) ** (n + 1) * kronecker(d // pi, pi)
            if sym == -1:
                row |= 1 << j
        rows.append(row)
    v = sum(1 << i for i, p in enumerate(primes) if kronecker(2, p) == -1)
    return F2Matrix(n, tuple(rows)), v


def kingan_r4(primes) -> dict:
    """4-ranks of Q(sqrt d) (strict) and Q(sqrt -d) from the tournament.

    For odd n the imaginary field has r4(-d) = n - 1 - rank A; the value
    n - 2 - rank A, sometimes quoted, is already negative for d = 3.
    Both values are checked against the Redei formula on the fundamental
    discriminants.
    """
    primes = tuple(primes)
    a, v = kingan_tournament(primes)
    n, rk = a.n, f2_rank(a)
    greater = in_column_space(a + identity(n), v)
    if n % 2 == 0:
        r_plus = n - 1 - rk
        r_minus = n - rk if greater else n - 1 - rk
    else:
        r_plus = n - 1 - rk if greater else n - 2 - rk
        r_minus = n - 1 - rk
    d = math.prod(primes)
    dp, dm = fundamental_discriminant(d), fundamental_discriminant(-d)
    report = {
        "primes": list(primes),
        "rank_A": rk,
        "v_in_image": greater,
        "r4_plus": r_plus,
        "r4_minus": r_minus,
        "disc_plus": dp,
        "disc_minus": dm,
        "e4_plus": e4(dp),
        "e4_minus": e4(dm),
    }
    if (report["e4_plus"], report["e4_minus"]) != (r_plus, r_minus):
        raise TheoremViolation(f"Kingan formulas disagree with Redei for {primes}", report)
    return report
