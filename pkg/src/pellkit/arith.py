"""Integer number theory at desk scale.

Factorization, Kronecker and quartic residue symbols, and the splitting of a
fundamental discriminant into prime discriminants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from pellkit.errors import DomainError

TRIAL_LIMIT = 10**6
FACTOR_LIMIT = 2**64

# Deterministic Miller-Rabin witnesses, valid for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES: list[int] = []


def small_primes() -> list[int]:
    """Primes below ``TRIAL_LIMIT`` (computed once)."""
    if not _SMALL_PRIMES:
        _SMALL_PRIMES.extend(_sieve(TRIAL_LIMIT))
    return _SMALL_PRIMES


def primes_up_to(n: int) -> list[int]:
    if n <= TRIAL_LIMIT:
        ps = small_primes()
        import bisect

        return ps[: bisect.bisect_right(ps, n)]
    return _sieve(n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd and composite
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"pollard rho failed on {n}")


def _split(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    f = _pollard_brent(n)
    _split(f, out)
    _split(n // f, out)


@lru_cache(maxsize=1 << 16)
def _factor_cached(n: int) -> tuple[int, ...]:
    out: list[int] = []
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out.append(p)
            n //= p
    if n > 1:
        if n < TRIAL_LIMIT * TRIAL_LIMIT:
            out.append(n)
        else:
            _split(n, out)
    return tuple(sorted(out))


def factor(n: int) -> tuple[int, ...]:
    """Prime factors of ``n`` with multiplicity, ascending.

    >>> factor(1105)
    (5, 13, 17)
    """
    if n <= 0:
        raise DomainError(f"factor needs a positive integer, got {n}")
    if n > FACTOR_LIMIT:
        raise DomainError(f"{n} exceeds the desk-scale bound 2^64")
    return _factor_cached(n)


def factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in factor(n):
        out[p] = out.get(p, 0) + 1
    return out


def distinct_primes(n: int) -> tuple[int, ...]:
    return tuple(sorted(set(factor(abs(n)))))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    fs = factor(abs(n))
    return len(fs) == len(set(fs))


def squarefree_part(n: int) -> int:
    """The squarefree integer in the square class of ``n`` (sign kept)."""
    if n == 0:
        raise DomainError("0 has no square class")
    out = -1 if n < 0 else 1
    for p, e in factorization(abs(n)).items():
        if e % 2:
            out *= p
    return out


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def quartic_symbol(q: int, p: int) -> int:
    """Rational biquadratic residue symbol (q/p)_4.

    For an odd prime ``p`` with (q/p) = +1 this is q^((p-1)/4) mod p, read as
    +-1; it needs p = 1 mod 4. ``p == 8`` selects the convention
    (q/8)_4 = +1 iff q = 1 mod 16, defined for primes q = 1 mod 8.
    """
    if p == 8:
        if q % 8 != 1:
            raise DomainError(f"(q/8)_4 needs q = 1 mod 8, got {q}")
        return 1 if q % 16 == 1 else -1
    if p % 4 != 1 or not is_prime(p):
        raise DomainError(f"quartic symbol modulo {p}: need a prime p = 1 mod 4")
    if kronecker(q, p) != 1:
        raise DomainError(f"symbol undefined: ({q}/{p}) != +1")
    r = pow(q, (p - 1) // 4, p)
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise DomainError(f"({q}/{p})_4 is not +-1 (residue {r})")


def sqrt_mod_prime(a: int, p: int) -> int:
    """Smallest s in [0, p) with s^2 = a mod p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if kronecker(a, p) != 1:
        raise DomainError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def unit_symbol(delta1: int, q: int) -> int:
    """Quadratic character of the fundamental unit of Q(sqrt(delta1)) at q.

    For odd ``q`` with (delta1/q) = +1 the unit (T + U sqrt(delta1))/2 is
    evaluated at sqrt(delta1) -> s, where s is the least square root of
    delta1 mod q. ``q == 8`` returns (-1)^(T'/4) for the unit written as
    T' + U' sqrt(delta1) with integral T' (delta1 = 1 mod 8).
    """
    from pellkit.pell import maximal_order_unit

    if delta1 <= 1:
        raise DomainError("unit_symbol needs a positive discriminant")
    t, u = maximal_order_unit(delta1)
    if q == 8:
        if delta1 % 8 != 1:
            raise DomainError("(eps/8) needs delta1 = 1 mod 8")
        if t % 2 or u % 2:
            from pellkit.errors import InternalError

            raise InternalError(f"unit of {delta1} has half-integral coordinates")
        big_t = t // 2
        if big_t % 4:
            from pellkit.errors import InternalError

            raise InternalError(f"T = {big_t} not divisible by 4 for delta1 = {delta1}")
        return -1 if (big_t // 4) % 2 else 1
    if q <= 2 or not is_prime(q):
        raise DomainError(f"unit_symbol needs an odd prime or 8, got {q}")
    if kronecker(delta1, q) != 1:
        raise DomainError(f"({delta1}/{q}) != +1")
    s = sqrt_mod_prime(delta1, q)
    value = (t + u * s) * pow(2, -1, q) % q
    return kronecker(value, q)


@dataclass(frozen=True)
class PrimeDiscriminant:
    value: int
    ramified_prime: int

    def __post_init__(self):
        v, p = self.value, self.ramified_prime
        if p == 2:
            if v not in (-4, 8, -8):
                raise DomainError(f"{v} is not a prime discriminant at 2")
        elif v != (-p if p % 4 == 3 else p) or not is_prime(p):
            raise DomainError(f"{v} is not a prime discriminant at {p}")


@dataclass(frozen=True)
class DiscriminantFactorization:
    d: int
    parts: tuple[PrimeDiscriminant, ...]

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(p.value for p in self.parts)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p.ramified_prime for p in self.parts)


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for squarefree m != 0, 1."""
    if m in (0, 1) or not is_squarefree(m):
        raise DomainError(f"{m} is not a squarefree radicand")
    return m if m % 4 == 1 else 4 * m


def radicand(d: int) -> int:
    """Squarefree m with Q(sqrt(m)) of discriminant d."""
    if not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    return d if d % 2 else d // 4


@lru_cache(maxsize=1 << 16)
def prime_discriminant_factorization(d: int) -> DiscriminantFactorization:
    """Split a fundamental discriminant into prime discriminants.

    Parts are ordered by ramified prime, so a 2-part comes first.
    """
    if not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    parts = []
    odd = 1
    for p in distinct_primes(d):
        if p == 2:
            continue
        v = -p if p % 4 == 3 else p
        odd *= v
        parts.append(PrimeDiscriminant(v, p))
    if d % 2 == 0:
        parts.insert(0, PrimeDiscriminant(d // odd, 2))
    return DiscriminantFactorization(d, tuple(parts))


def is_sum_of_two_squares_disc(d: int) -> bool:
    """True iff every prime discriminant dividing d is positive."""
    return all(p.value > 0 for p in prime_discriminant_factorization(d).parts)


def fundamental_discriminants(lo: int, hi: int):
    """Fundamental discriminants in [lo, hi], ascending (either sign)."""
    for d in range(lo, hi + 1):
        if is_fundamental_discriminant(d):
            yield d
