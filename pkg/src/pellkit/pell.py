"""Continued fractions of sqrt(d), Pell units, Richaud-Degert families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from pellkit.errors import DomainError, InternalError


@dataclass(frozen=True)
class ContinuedFractionExpansion:
    d: int
    a0: int
    period: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)

    def check(self) -> None:
        """Assert the terminator and palindrome properties."""
        p = self.period
        assert self.a0 == math.isqrt(self.d)
        assert p[-1] == 2 * self.a0, (self.d, p)
        assert p[:-1] == p[-2::-1], (self.d, p)

    def __str__(self) -> str:
        return f"[{self.a0}; {', '.join(map(str, self.period))}]"


@dataclass(frozen=True)
class PellSolution:
    d: int
    x: int
    y: int
    norm: int

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != self.norm:
            raise InternalError(f"({self.x}, {self.y}) does not have norm {self.norm} for d={self.d}")

    def __mul__(self, other: "PellSolution") -> "PellSolution":
        if other.d != self.d:
            raise DomainError("cannot compose solutions for different d")
        x = self.x * other.x + self.d * self.y * other.y
        y = self.x * other.y + self.y * other.x
        return PellSolution(self.d, x, y, self.norm * other.norm)


@dataclass(frozen=True)
class RDForm:
    """d = a^2 + r with r | 2a."""

    a: int
    r: int

    @property
    def d(self) -> int:
        return self.a * self.a + self.r


def _check_nonsquare(d: int) -> None:
    if d < 2 or math.isqrt(d) ** 2 == d:
        raise DomainError(f"d = {d} must be a nonsquare integer >= 2")


@lru_cache(maxsize=4096)
def cf_expand(d: int) -> ContinuedFractionExpansion:
    """Expansion sqrt(d) = [a0; period], period found by state repetition."""
    _check_nonsquare(d)
    a0 = math.isqrt(d)
    p, q, a = 0, 1, a0
    seen = set()
    quotients = []
    while True:
        p = a * q - p
        num = d - p * p
        if num % q:
            raise InternalError(f"inexact step in expansion of sqrt({d})")
        q = num // q
        if (p, q) in seen:
            break
        seen.add((p, q))
        a = (a0 + p) // q
        quotients.append(a)
    cf = ContinuedFractionExpansion(d, a0, tuple(quotients))
    cf.check()
    return cf


def convergents(a0: int, quotients):
    """Yield (p_k, q_k) for [a0; quotients...]."""
    p0, q0, p1, q1 = 1, 0, a0, 1
    yield p1, q1
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1


@lru_cache(maxsize=4096)
def fundamental_unit(d: int) -> PellSolution:
    """Least solution of x^2 - d y^2 = -1 if it exists, else of = +1."""
    cf = cf_expand(d)
    ell = cf.period_length
    for x, y in convergents(cf.a0, cf.period[: ell - 1]):
        pass
    return PellSolution(d, x, y, -1 if ell % 2 else 1)


def fundamental_solution_plus(d: int) -> PellSolution:
    eps = fundamental_unit(d)
    return eps if eps.norm == 1 else eps * eps


def negative_pell_solvable(d: int) -> bool:
    return cf_expand(d).period_length % 2 == 1


def solution_power(fund: PellSolution, m: int) -> PellSolution:
    if m < 1:
        raise DomainError("exponent must be >= 1")
    result = None
    base = fund
    while m:
        if m & 1:
            result = base if result is None else result * base
        m >>= 1
        if m:
            base = base * base
    return result


def small_norm_solution(d: int, n: int, bound: int = 10**4) -> tuple[int, int] | None:
    """Least positive (x, y) with x^2 - d y^2 = n and gcd(x, y) = 1.

    For |n| < sqrt(d) every primitive solution comes from a convergent, so
    two periods decide the question; otherwise y <= bound is searched.
    """
    _check_nonsquare(d)
    if n * n < d:
        cf = cf_expand(d)
        for x, y in convergents(cf.a0, cf.period * 2):
            if x * x - d * y * y == n:
                return x, y
        return None
    for y in range(1, bound + 1):
        t = n + d * y * y
        if t >= 0:
            x = math.isqrt(t)
            if x * x == t and math.gcd(x, y) == 1:
                return x, y
    return None


@lru_cache(maxsize=4096)
def maximal_order_unit(disc: int) -> tuple[int, int]:
    """Fundamental unit (T + U sqrt(disc))/2 of the order of discriminant disc.

    T, U > 0. For disc = 1 mod 4 the reduced number w = (b + sqrt(disc))/2,
    b the largest odd integer below sqrt(disc), has a purely periodic
    expansion of length l, and q_{l-1} w + q_{l-2} is the unit.
    """
    if disc % 4 not in (0, 1):
        raise DomainError(f"{disc} is not a discriminant")
    _check_nonsquare(disc)
    if disc % 4 == 0:
        eps = fundamental_unit(disc // 4)
        return 2 * eps.x, eps.y
    s = math.isqrt(disc)
    b = s if s % 2 else s - 1
    p, q = b, 2
    qm2, qm1 = 1, 0
    while True:
        a = (p + s) // q
        qm2, qm1 = qm1, a * qm1 + qm2
        p = a * q - p
        num = disc - p * p
        if num % q:
            raise InternalError(f"inexact step for ({p} + sqrt({disc}))/{q}")
        q = num // q
        if (p, q) == (b, 2):
            break
    t, u = b * qm1 + 2 * qm2, qm1
    if abs(t * t - disc * u * u) != 4:
        raise InternalError(f"bad unit for disc {disc}")
    return t, u


def rd_recognize(d: int) -> RDForm | None:
    """Write d = a^2 + r with r | 2a and 0 < |r| <= a, trying a = floor(sqrt d) first."""
    _check_nonsquare(d)
    s = math.isqrt(d)
    for a in (s, s + 1):
        r = d - a * a
        if 0 < abs(r) <= a and (2 * a) % r == 0:
            return RDForm(a, r)
    return None


def rd_unit(form: RDForm) -> PellSolution:
    a, r = form.a, form.r
    d = form.d
    if (2 * a) % r:
        raise InternalError(f"r = {r} does not divide 2a = {2 * a}")
    if abs(r) == 1:
        return PellSolution(d, a, 1, -r)
    x, rem = divmod(2 * a * a + r, abs(r))
    if rem:
        raise InternalError("non-integral Richaud-Degert unit")
    return PellSolution(d, x, 2 * a // abs(r), 1)


RD_FAMILIES = ("k2+k", "k2+2k", "a2k2+a", "a2k2+2a")


def rd_family_d(family: str, k: int, a: int = 1) -> int:
    return {
        "k2+k": k * k + k,
        "k2+2k": k * k + 2 * k,
        "a2k2+a": a * a * k * k + a,
        "a2k2+2a": a * a * k * k + 2 * a,
    }[family]


def rd_cf_closed_form(family: str, k: int, a: int = 1) -> ContinuedFractionExpansion:
    """Closed-form expansions of sqrt(d) for four Richaud-Degert families."""
    if family not in RD_FAMILIES:
        raise DomainError(f"unknown family {family!r}")
    if k < 1 or a < 1:
        raise DomainError("parameters must be positive")
    d = rd_family_d(family, k, a)
    _check_nonsquare(d)
    if family == "k2+k":
        a0, period = k, (2, 2 * k)
    elif family == "k2+2k":
        a0, period = k, (1, 2 * k)
    elif family == "a2k2+a":
        a0, period = a * k, (2 * k, 2 * a * k)
    else:
        a0, period = a * k, (k, 2 * a * k)
    return ContinuedFractionExpansion(d, a0, _primitive_period(period))


def _primitive_period(period: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition is `period` ([2, 2] -> [2] for d = 2)."""
    n = len(period)
    for L in range(1, n + 1):
        if n % L == 0 and period[:L] * (n // L) == period:
            return period[:L]
    return period


def brahmagupta_lift(a: int, b: int, k: int, n: int) -> PellSolution:
    """From a^2 - n b^2 = k build X = (a^2 + n b^2)/|k|, Y = 2ab/|k|.

    Returns X^2 - n Y^2 = 1 with X, Y >= 0.
    """
    if a * a - n * b * b != k:
        raise DomainError(f"{a}^2 - {n}*{b}^2 != {k}")
    if k not in (1, -1, 2, -2) and (k == 0 or n % k):
        raise DomainError(f"k = {k} is neither +-1, +-2 nor a divisor of n")
    x, rx = divmod(a * a + n * b * b, abs(k))
    y, ry = divmod(2 * abs(a * b), abs(k))
    if rx or ry:
        raise DomainError("lift is not integral")
    return PellSolution(n, x, y, 1)


def chakravala(d: int) -> tuple[PellSolution | None, PellSolution]:
    """Bhaskara's cyclic method, independent of the continued-fraction code.

    Returns (first solution of norm -1 met on the way or None, the solution
    of norm +1 at which the cycle stops).
    """
    _check_nonsquare(d)
    s = math.isqrt(d)
    a, b = (s, 1) if d - s * s <= (s + 1) ** 2 - d else (s + 1, 1)
    k = a * a - d
    neg = None
    for _ in range(10**7):
        if k == -1 and neg is None:
            neg = PellSolution(d, a, b, -1)
        if k == 1:
            return neg, PellSolution(d, a, b, 1)
        K = abs(k)
        # m = -a / b mod K, chosen positive with |m^2 - d| minimal
        m0 = (-a * pow(b, -1, K)) % K if K > 1 else 0
        lo = m0 + ((s - m0) // K) * K if K > 1 else s
        cands = [m for m in (lo - K, lo, lo + K, lo + 2 * K) if m > 0] if K > 1 else [s, s + 1]
        m = min(cands, key=lambda m: (abs(m * m - d), m))
        a, b, k = (a * m + d * b) // K, (a + b * m) // K, (m * m - d) // k
    raise InternalError(f"chakravala did not close for d = {d}")
