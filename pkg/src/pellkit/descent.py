"""Legendre/Dirichlet auxiliary equations M r^2 - N s^2 = c (c = 1, 2).

Every positive solution (r, s) of such an equation with MN = A gives the
norm-one unit P + Q sqrt(A) = (r sqrt(M) + s sqrt(N))^2 / c, and conversely
the parity of P fixes c while gcd(A, P + 1) (or gcd(A, (P + 1)/2)) fixes M.
That correspondence is what `verify_uniqueness` turns into a certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from pellkit.arith import (
    distinct_primes,
    is_squarefree,
    kronecker,
    squarefree_part,
)
from pellkit.errors import DomainError, InternalError, TheoremViolation
from pellkit.pell import PellSolution, fundamental_solution_plus, solution_power


@dataclass(frozen=True, order=True)
class DescentEquation:
    c: int
    M: int
    N: int

    @property
    def A(self) -> int:
        return self.M * self.N

    def is_trivial(self) -> bool:
        return self.selmer_class() == 1

    def selmer_class(self) -> int:
        return selmer_class(self)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.M, self.N, self.c

    def evaluate(self, r: int, s: int) -> int:
        return self.M * r * r - self.N * s * s

    def __str__(self) -> str:
        return f"{self.M}r^2 - {self.N}s^2 = {self.c}"


def _check_A(A: int) -> None:
    if A < 2 or not is_squarefree(A):
        raise DomainError(f"A = {A} must be squarefree and >= 2")


def divisors(n: int) -> list[int]:
    out = [1]
    for p in distinct_primes(n):
        out += [x * p for x in out]
    return sorted(out)


def enumerate_descents(A: int) -> list[DescentEquation]:
    """All (M, N, c) with MN = A, ordered by c and then by M."""
    _check_A(A)
    return [DescentEquation(c, M, A // M) for c in (1, 2) for M in divisors(A)]


def _equation_from_P(A: int, P: int) -> DescentEquation:
    # Dirichlet's reading of P + Q sqrt(A), P^2 - A Q^2 = 1
    if P % 2:
        M = math.gcd(A, (P + 1) // 2)
        return DescentEquation(1, M, A // M)
    M = math.gcd(A, P + 1)
    return DescentEquation(2, M, A // M)


def _witness_from_P(eq: DescentEquation, P: int) -> tuple[int, int] | None:
    # c = 1: P + 1 = 2M r^2, P - 1 = 2N s^2; c = 2: P + 1 = M r^2, P - 1 = N s^2
    k = 3 - eq.c
    if (P + 1) % (k * eq.M) or (P - 1) % (k * eq.N):
        return None
    r2, s2 = (P + 1) // (k * eq.M), (P - 1) // (k * eq.N)
    r, s = math.isqrt(r2), math.isqrt(s2)
    if r * r != r2 or s * s != s2 or s == 0:
        return None
    return r, s


def descent_from_fundamental(A: int) -> tuple[DescentEquation, int, int]:
    """The auxiliary equation solved by the fundamental solution of x^2 - A y^2 = 1."""
    _check_A(A)
    fund = fundamental_solution_plus(A)
    eq = _equation_from_P(A, fund.x)
    w = _witness_from_P(eq, fund.x)
    if w is None:
        raise InternalError(f"fundamental solution of A = {A} gives no exact square roots")
    return eq, w[0], w[1]


def solve_descent_brute(eq: DescentEquation, bound: int) -> tuple[int, int] | None:
    """Least (r, s), 1 <= r <= bound, s >= 1. Absence is not a proof."""
    for r in range(1, bound + 1):
        t = eq.M * r * r - eq.c
        if t > 0 and t % eq.N == 0:
            s2 = t // eq.N
            s = math.isqrt(s2)
            if s * s == s2:
                return r, s
    return None


def selmer_class(eq: DescentEquation) -> int:
    """Square class M (c = 1) or 2M (c = 2), as a positive squarefree integer."""
    return eq.M if eq.c == 1 else squarefree_part(2 * eq.M)


def selmer_mul(e1: int, e2: int) -> int:
    g = math.gcd(e1, e2)
    return (e1 // g) * (e2 // g)


def local_obstruction(eq: DescentEquation) -> str | None:
    """A prime at which M r^2 - N s^2 = c has no solution with r, s coprime to it.

    Odd primes dividing A are tested, and the equation modulo 16 (a solution
    cannot have r and s both even). Returns a short reason or None.
    """
    M, N, c = eq.M, eq.N, eq.c
    for p in distinct_primes(2 * eq.A):
        if p == 2:
            continue
        # p | N: M r^2 = c mod p; p | M: -N s^2 = c mod p
        if N % p == 0 and kronecker(c * M, p) == -1:
            return f"({c * M}/{p}) = -1"
        if M % p == 0 and kronecker(-c * N, p) == -1:
            return f"({-c * N}/{p}) = -1"
    if not any(
        (M * r * r - N * s * s - c) % 16 == 0
        for r in range(16)
        for s in range(16)
        if r % 2 or s % 2
    ):
        return "no solution mod 16"
    return None


def residue_cycle(A: int, fund: PellSolution | None = None) -> list[int]:
    """Residues mod 2A of P_m, m = 1, 2, ..., for P_m + Q_m sqrt(A) = fund^m.

    The list covers one full period of the sequence.
    """
    fund = fund or fundamental_solution_plus(A)
    mod = 2 * A
    p, q = fund.x % mod, fund.y % mod
    x, y = p, q
    out = []
    while True:
        out.append(x)
        x, y = (x * p + A * y * q) % mod, (x * q + y * p) % mod
        if (x, y) == (p, q):
            return out


@dataclass
class UniquenessReport:
    A: int
    nontrivial: DescentEquation
    witness: tuple[int, int]
    solvable_classes: tuple[int, ...]
    status: dict[DescentEquation, str] = field(default_factory=dict)

    def solvable(self) -> list[DescentEquation]:
        return [e for e, s in self.status.items() if s.startswith("solvable")]


def verify_uniqueness(A: int) -> UniquenessReport:
    """Decide every auxiliary equation for A, with a certificate for each.

    Solvable equations get an explicit (r, s) read off P_1 or P_2.
    Unsolvable ones are certified either by a local obstruction or by the
    residue cycle of P_m mod 2A, which lists every equation any power of the
    fundamental solution can produce. Exactly one nontrivial square class
    must be solvable.
    """
    _check_A(A)
    fund = fundamental_solution_plus(A)
    eq1, r1, s1 = descent_from_fundamental(A)
    reachable = {selmer_class(_equation_from_P(A, P)) for P in set(residue_cycle(A, fund))}
    P_values = (fund.x, solution_power(fund, 2).x)
    status: dict[DescentEquation, str] = {}
    for eq in enumerate_descents(A):
        cls = selmer_class(eq)
        if cls in reachable:
            w = None
            for P in P_values:
                w = _witness_from_P(eq, P)
                if w:
                    break
            if w is None:
                raise TheoremViolation(
                    f"A={A}: class {cls} reachable but {eq} has no witness",
                    {"A": A, "equation": str(eq)},
                )
            if eq.evaluate(*w) != eq.c:
                raise InternalError(f"bad witness {w} for {eq}")
            if local_obstruction(eq):
                raise InternalError(f"local filter rejects solvable {eq}")
            status[eq] = f"solvable {w}"
        else:
            reason = local_obstruction(eq)
            status[eq] = f"unsolvable: {reason}" if reason else "unsolvable: residue cycle"
    nontrivial = sorted(reachable - {1})
    if len(nontrivial) != 1 or 1 not in reachable or nontrivial[0] != selmer_class(eq1):
        raise TheoremViolation(
            f"A={A}: solvable square classes {sorted(reachable)}",
            {"A": A, "classes": sorted(reachable), "fundamental_equation": str(eq1)},
        )
    return UniquenessReport(A, eq1, (r1, s1), tuple(sorted(reachable)), status)


def solve_ternary_legendre(delta1: int, delta2: int, bound: int) -> tuple[int, int, int] | None:
    """Primitive (x, y, z) != 0 with x^2 - delta1 y^2 = delta2 z^2, max(y, z) <= bound.

    Searched by increasing max(y, z), then z, then y.
    """
    for m in range(1, bound + 1):
        for z in range(0, m + 1):
            ys = range(0, m + 1) if z == m else (m,)
            for y in ys:
                t = delta1 * y * y + delta2 * z * z
                if t < 0:
                    continue
                x = math.isqrt(t)
                if x * x == t and math.gcd(math.gcd(x, y), z) == 1:
                    return x, y, z
    return None
