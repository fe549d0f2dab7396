"""Binary quadratic forms: reduction, cycles, composition, 2-part of Cl+.

This module is the class-number oracle for everything else. Indefinite
class counting uses rho-cycles only; composition is used just for the
group structure, so the two routes fail independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from pellkit.arith import factorization, is_fundamental_discriminant, radicand
from pellkit.errors import DomainError, InternalError, ResourceError
from pellkit.pell import negative_pell_solvable

CLASS_GROUP_GUARD = 10**4


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def __str__(self) -> str:
        return f"({self.a}, {self.b}, {self.c})"


Form = BinaryQuadraticForm


def _check_disc(disc: int) -> None:
    if not is_fundamental_discriminant(disc):
        raise DomainError(f"{disc} is not a fundamental discriminant")


def _divisors_of(n: int) -> list[int]:
    out = [1]
    for p, e in factorization(n).items():
        out = [x * p**k for x in out for k in range(e + 1)]
    return out


# -- definite forms ---------------------------------------------------------


def reduce_definite(f: Form) -> Form:
    a, b, c = f.a, f.b, f.c
    if a <= 0:
        raise DomainError("only positive definite forms are handled")
    while True:
        if not -a < b <= a:
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)


def is_reduced_definite(f: Form) -> bool:
    a, b, c = f.a, f.b, f.c
    return abs(b) <= a <= c and not (b < 0 and (abs(b) == a or a == c))


# -- indefinite forms -------------------------------------------------------


def is_reduced_indefinite(f: Form) -> bool:
    """|sqrt(D) - 2|a|| < b < sqrt(D), in exact integer arithmetic."""
    D = f.disc
    s = math.isqrt(D)
    a2, b = 2 * abs(f.a), f.b
    if b <= 0 or b > s:
        return False
    if a2 < s + 1:  # 2|a| < sqrt(D)
        return b + a2 >= s + 1
    return b + s >= a2


def _normalize_b(b: int, a: int, D: int) -> int:
    s = math.isqrt(D)
    m = 2 * abs(a)
    if abs(a) > s:
        t = b % m
        return t - m if t > abs(a) else t
    return s - (s - b) % m


def rho(f: Form) -> Form:
    D = f.disc
    b = _normalize_b(-f.b, f.c, D)
    return Form(f.c, b, (b * b - D) // (4 * f.c))


def reduce_indefinite(f: Form) -> Form:
    D = f.disc
    b = _normalize_b(f.b, f.a, D)
    f = Form(f.a, b, (b * b - D) // (4 * f.a))
    for _ in range(10**6):
        if is_reduced_indefinite(f):
            return f
        f = rho(f)
    raise InternalError(f"reduction of {f} did not terminate")


def cycle_of(f: Form) -> tuple[Form, ...]:
    """The rho-cycle of a reduced indefinite form, rotated to start at its minimum."""
    out = [f]
    g = rho(f)
    while g != f:
        out.append(g)
        g = rho(g)
    i = out.index(min(out))
    return tuple(out[i:] + out[:i])


# -- enumeration ------------------------------------------------------------


def enumerate_reduced(disc: int) -> list[Form]:
    """All reduced primitive forms of a fundamental discriminant, sorted."""
    _check_disc(disc)
    out = []
    if disc < 0:
        b = disc % 2
        while 3 * b * b <= -disc:
            ac = (b * b - disc) // 4
            for a in _divisors_of(ac):
                c = ac // a
                if a < b or a > c:
                    continue
                for bb in {b, -b}:
                    f = Form(a, bb, c)
                    if f.is_primitive() and is_reduced_definite(f):
                        out.append(f)
            b += 2
        return sorted(out)
    s = math.isqrt(disc)
    for b in range(1 if disc % 2 else 2, s + 1, 2):
        ac = (disc - b * b) // 4
        for A in _divisors_of(ac):
            for a in (A, -A):
                f = Form(a, b, -ac // a)
                if f.is_primitive() and is_reduced_indefinite(f):
                    out.append(f)
    return sorted(out)


@lru_cache(maxsize=256)
def reduced_cycles(disc: int) -> tuple[tuple[Form, ...], ...]:
    """Rho-cycles of reduced indefinite forms; one per strict class."""
    if disc < 0:
        raise DomainError("cycles are defined for positive discriminants")
    remaining = set(enumerate_reduced(disc))
    cycles = []
    while remaining:
        cyc = cycle_of(min(remaining))
        remaining.difference_update(cyc)
        cycles.append(cyc)
    return tuple(sorted(cycles))


def class_number(disc: int) -> int:
    """h(disc) for disc < 0, h+(disc) for disc > 0."""
    if disc < 0:
        return len(enumerate_reduced(disc))
    return len(reduced_cycles(disc))


def class_number_strict(disc: int) -> int:
    if disc <= 0:
        raise DomainError("strict class number needs a positive discriminant")
    return class_number(disc)


def class_number_wide(disc: int) -> int:
    """h = h+ when the fundamental unit has norm -1, else h+/2."""
    h_plus = class_number_strict(disc)
    if negative_pell_solvable(radicand(disc)):
        return h_plus
    if h_plus % 2:
        raise InternalError(f"h+ = {h_plus} is odd but N(eps) = +1 for {disc}")
    return h_plus // 2


def class_number_wide_direct(disc: int) -> int:
    """Count cycles up to (a, b, c) -> (-a, b, -c), i.e. classes modulo (sqrt(d))."""
    cycles = reduced_cycles(disc)
    index = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    seen, count = set(), 0
    for i, cyc in enumerate(cycles):
        if i in seen:
            continue
        f = cyc[0]
        j = index[Form(-f.a, f.b, -f.c)]
        seen.update({i, j})
        count += 1
    return count


# -- composition ------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def compose(f: Form, g: Form) -> Form:
    """Dirichlet composition through united forms, followed by reduction."""
    D = f.disc
    if g.disc != D:
        raise DomainError("forms of different discriminants")
    a1, b1 = f.a, f.b
    a2, b2 = g.a, g.b
    h = (b1 + b2) // 2
    g1, u, v = _xgcd(a1, a2)
    e, w, r = _xgcd(g1, h)
    p, q = w * u, w * v
    A = a1 * a2 // (e * e)
    num = p * a1 * b2 + q * a2 * b1 + r * (b1 * b2 + D) // 2
    if num % e:
        raise InternalError(f"composition of {f} and {g}: non-integral middle coefficient")
    B = (num // e) % (2 * abs(A))
    C, rem = divmod(B * B - D, 4 * A)
    if rem:
        raise InternalError(f"composition of {f} and {g}: B^2 - D not divisible by 4A")
    return reduce_form(Form(A, B, C))


def reduce_form(f: Form) -> Form:
    if f.disc < 0:
        return reduce_definite(f)
    return reduce_indefinite(f)


def principal_form(disc: int) -> Form:
    k = disc % 2
    return reduce_form(Form(1, k, (k - disc) // 4))


class FormClassGroup:
    """Strict form class group of a fundamental discriminant."""

    def __init__(self, disc: int):
        _check_disc(disc)
        self.disc = disc
        if disc < 0:
            reps = enumerate_reduced(disc)
            self._index = {f: i for i, f in enumerate(reps)}
        else:
            cycles = reduced_cycles(disc)
            reps = [cyc[0] for cyc in cycles]
            self._index = {f: i for i, cyc in enumerate(cycles) for f in cyc}
        if len(reps) > CLASS_GROUP_GUARD:
            raise ResourceError(f"h = {len(reps)} exceeds guard {CLASS_GROUP_GUARD}")
        self.classes: list[Form] = reps
        self.identity = self.index(principal_form(disc))

    @property
    def order(self) -> int:
        return len(self.classes)

    def index(self, f: Form) -> int:
        g = reduce_form(f)
        try:
            return self._index[g]
        except KeyError:
            raise InternalError(f"{g} is not a reduced form of disc {self.disc}") from None

    def mul(self, i: int, j: int) -> int:
        return self.index(compose(self.classes[i], self.classes[j]))

    @cached_property
    def table(self) -> list[list[int]]:
        n = self.order
        return [[self.mul(i, j) for j in range(n)] for i in range(n)]

    @cached_property
    def squares(self) -> list[int]:
        return [self.mul(i, i) for i in range(self.order)]

    def power_images(self) -> list[set[int]]:
        """C, C^2, C^4, ... until the chain stabilizes."""
        chain = [set(range(self.order))]
        while True:
            nxt = {self.squares[i] for i in chain[-1]}
            if nxt == chain[-1]:
                return chain
            chain.append(nxt)

    def two_ranks(self, depth: int = 3) -> tuple[int, ...]:
        """dim C^(2^k)/C^(2^(k+1)) for k = 0 .. depth-1."""
        sizes = [len(s) for s in self.power_images()]
        out = []
        for k in range(depth):
            if k + 1 < len(sizes):
                ratio = sizes[k] // sizes[k + 1]
                out.append(ratio.bit_length() - 1)
            else:
                out.append(0)
        return tuple(out)

    def two_sylow_invariants(self) -> tuple[int, ...]:
        """Orders 2^k of the cyclic factors of the 2-Sylow subgroup, descending."""
        ranks = self.two_ranks(depth=max(1, self.order.bit_length()))
        factors = []
        for k, r in enumerate(ranks):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            factors += [2 ** (k + 1)] * (r - nxt)
        return tuple(sorted(factors, reverse=True))


@lru_cache(maxsize=1024)
def class_group_structure_2part(disc: int) -> tuple[int, int, int]:
    """(e2, e4, e8) of the strict class group."""
    return FormClassGroup(disc).two_ranks(3)
