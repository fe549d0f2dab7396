"""Classical solvability criteria, each paired with the fact it predicts.

Every function is total: inputs outside a criterion's hypotheses give a
verdict with ``applicable=False`` rather than an exception. Ground truth is
computed only for applicable inputs, from the Pell, descent and forms
modules, never from the symbols the criterion itself uses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from pellkit.arith import (
    is_fundamental_discriminant,
    is_prime,
    is_sum_of_two_squares_disc,
    kronecker,
    prime_discriminant_factorization,
    quartic_symbol,
    radicand,
    unit_symbol,
)
from pellkit.errors import DomainError

RICHAUD_CLAUSES = ("R1a", "R1b", "R2", "R3a", "R3b", "R4", "S1", "S2", "S3")


@dataclass(frozen=True)
class CriterionVerdict:
    criterion_id: str
    inputs: dict
    applicable: bool
    prediction: object = None
    ground_truth: object = None
    side_checks: tuple[tuple[str, bool], ...] = field(default=())

    @property
    def agrees(self) -> bool | None:
        if not self.applicable or self.prediction is None:
            return None
        return self.prediction == self.ground_truth and all(ok for _, ok in self.side_checks)

    def as_record(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "inputs": self.inputs,
            "applicable": self.applicable,
            "prediction": self.prediction,
            "truth": self.ground_truth,
            "agrees": self.agrees,
        }


def _no(cid: str, inputs: dict) -> CriterionVerdict:
    return CriterionVerdict(cid, inputs, False)


def _neg_pell(d: int) -> bool:
    from pellkit.pell import negative_pell_solvable

    return negative_pell_solvable(d)


def _odd_primes(ps, residue=None, modulus=None) -> bool:
    ps = tuple(ps)
    if len(set(ps)) != len(ps):
        return False
    for p in ps:
        if not isinstance(p, int) or p < 3 or not is_prime(p):
            return False
        if modulus and p % modulus != residue:
            return False
    return True


def _descent_solvable(A: int, M: int, c: int = 1) -> bool:
    from pellkit.descent import DescentEquation, verify_uniqueness

    rep = verify_uniqueness(A)
    return rep.status[DescentEquation(c, M, A // M)].startswith("solvable")


# -- one prime --------------------------------------------------------------


def legendre_prime(p: int) -> CriterionVerdict:
    """p = 1 mod 4: x^2 - p y^2 = -1; p = 3 mod 8: = -2; p = 7 mod 8: = +2."""
    from pellkit.pell import small_norm_solution

    inputs = {"p": p}
    if not _odd_primes([p]):
        return _no("legendre_prime", inputs)
    norm = -1 if p % 4 == 1 else (-2 if p % 8 == 3 else 2)
    inputs["norm"] = norm
    if norm == -1:
        truth = _neg_pell(p)
    else:
        truth = small_norm_solution(p, norm) is not None
    return CriterionVerdict("legendre_prime", inputs, True, True, truth)


_TWO_TERM = {3: ("p r^2 - 2 s^2 = 1", "p"), 5: ("2p r^2 - s^2 = 1", "2p"), 7: ("2 r^2 - p s^2 = 1", "2")}


def dirichlet_two_term(p: int) -> CriterionVerdict:
    """Which of the equations M r^2 - N s^2 = 1, MN = 2p, is solvable."""
    inputs = {"p": p}
    if not _odd_primes([p]) or p % 8 == 1:
        return _no("dirichlet_two_term", inputs)
    label, which = _TWO_TERM[p % 8]
    M = {"p": p, "2p": 2 * p, "2": 2}[which]
    inputs["equation"] = label
    return CriterionVerdict("dirichlet_two_term", inputs, True, True, _descent_solvable(2 * p, M))


def dirichlet_quartic(p: int) -> CriterionVerdict:
    """p = 9 mod 16 with (2/p)_4 = -1 gives 2p r^2 - s^2 = 1."""
    inputs = {"p": p}
    if not _odd_primes([p], 1, 8) or p % 16 != 9 or quartic_symbol(2, p) != -1:
        return _no("dirichlet_quartic", inputs)
    return CriterionVerdict("dirichlet_quartic", inputs, True, True, _descent_solvable(2 * p, 2 * p))


def dirichlet_pq(p: int, q: int) -> CriterionVerdict:
    """x^2 - pq y^2 = -1 when (p/q) = -1, or (p/q)_4 = (q/p)_4 = -1."""
    inputs = {"p": p, "q": q}
    if not _odd_primes([p, q], 1, 4):
        return _no("dirichlet_pq", inputs)
    s = kronecker(p, q)
    if s == -1:
        inputs["branch"] = "quadratic"
    elif quartic_symbol(p, q) == -1 and quartic_symbol(q, p) == -1:
        inputs["branch"] = "quartic"
    else:
        return _no("dirichlet_pq", inputs)
    return CriterionVerdict("dirichlet_pq", inputs, True, True, _neg_pell(p * q))


# -- Richaud ----------------------------------------------------------------


def _richaud_hypothesis(ps: tuple[int, ...], clause: str) -> int | None:
    """The d of x^2 - d y^2 = -1 predicted by a clause, or None if it does not apply."""

    def sym(a, b):
        return kronecker(a, b)

    five = lambda *xs: _odd_primes(xs, 5, 8)  # noqa: E731
    one = lambda *xs: _odd_primes(xs, 1, 8)  # noqa: E731
    if clause == "R1a" and len(ps) == 1 and five(*ps):
        return 2 * ps[0]
    if clause == "R1b" and len(ps) == 2 and five(*ps):
        return 2 * ps[0] * ps[1]
    if clause == "R2" and len(ps) == 3 and five(*ps):
        p, q, r = ps
        if sym(2 * p, q) == sym(2 * p, r) == -1:
            return 2 * p * q * r
    if clause == "R3a" and len(ps) == 2:
        p, a = ps
        if five(p) and one(a) and sym(2 * p, a) == -1:
            return 2 * a * p
    if clause == "R3b" and len(ps) == 3:
        p, a, b = ps
        if five(p) and one(a, b) and a != p != b and sym(2 * p, a) == sym(2 * p, b) == -1:
            return 2 * a * b * p
    if clause == "R4" and len(ps) == 3:
        p, q, a = ps
        if five(p, q) and one(a) and a not in (p, q) and sym(p * q, a) == -1:
            return 2 * a * p * q
    if clause in ("S1", "S2", "S3") and len(ps) == 4 and five(*ps):
        p1, p2, p3, p4 = ps
        d = p1 * p2 * p3 * p4
        if clause == "S1":
            ok = _neg_pell(p1 * p2 * p3) and sym(p4, p1) == sym(p4, p2) == sym(p4, p3) == 1
        elif clause == "S2":
            ok = (
                _neg_pell(p1 * p2 * p3)
                and sym(p1, p3) == sym(p2, p3) == -1
                and sym(p1, p4) == sym(p2, p4) == sym(p3, p4) == -1
            )
        else:
            ok = sym(p1 * p2, p3) == sym(p1 * p2, p4) == sym(p3 * p4, p1) == sym(p3 * p4, p2)
        if ok:
            return d
    return None


def richaud(primes, clause: str) -> CriterionVerdict:
    """One clause of Richaud's propositions; see RICHAUD_CLAUSES.

    R1a: p = 5 mod 8 gives 2p.  R1b: p, q = 5 mod 8 give 2pq.
    R2: p, q, r = 5 mod 8 with (2p/q) = (2p/r) = -1 give 2pqr.
    R3a: p = 5, a = 1 mod 8 with (2p/a) = -1 give 2ap.
    R3b: p = 5, a, b = 1 mod 8 with (2p/a) = (2p/b) = -1 give 2abp.
    R4: p, q = 5, a = 1 mod 8 with (pq/a) = -1 give 2apq.
    S1-S3: the four-prime statements with all p_i = 5 mod 8.
    """
    ps = tuple(primes)
    inputs = {"primes": list(ps), "clause": clause}
    if clause not in RICHAUD_CLAUSES:
        return _no("richaud", inputs)
    d = _richaud_hypothesis(ps, clause)
    if d is None:
        return _no("richaud", inputs)
    inputs["d"] = d
    return CriterionVerdict("richaud", inputs, True, True, _neg_pell(d))


# -- products of primes 1 mod 4 ---------------------------------------------


def _plus_pairs(ps) -> list[tuple[int, int]]:
    return [(a, b) for a, b in itertools.combinations(ps, 2) if kronecker(a, b) == 1]


def _odd_product_ok(ps, minimum: int) -> bool:
    return len(ps) >= minimum and len(ps) % 2 == 1 and _odd_primes(ps, 1, 4)


def tano(primes) -> CriterionVerdict:
    """(p_i/p_j) = +1 for at most one pair gives x^2 - d y^2 = -1."""
    ps = tuple(primes)
    inputs = {"primes": list(ps)}
    if not _odd_product_ok(ps, 3) or len(_plus_pairs(ps)) > 1:
        return _no("tano", inputs)
    return CriterionVerdict("tano", inputs, True, True, _neg_pell(math.prod(ps)))


def trotter(primes) -> CriterionVerdict:
    """No i, j, k (i != k) with (p_i/p_j) = (p_j/p_k) = +1."""
    ps = tuple(primes)
    inputs = {"primes": list(ps)}
    if not _odd_product_ok(ps, 1):
        return _no("trotter", inputs)
    deg = {p: 0 for p in ps}
    for a, b in _plus_pairs(ps):
        deg[a] += 1
        deg[b] += 1
    if max(deg.values()) > 1:
        return _no("trotter", inputs)
    return CriterionVerdict("trotter", inputs, True, True, _neg_pell(math.prod(ps)))


def newman(primes) -> CriterionVerdict:
    """All (p_i/p_j) = -1."""
    ps = tuple(primes)
    inputs = {"primes": list(ps)}
    if not _odd_product_ok(ps, 3) or _plus_pairs(ps):
        return _no("newman", inputs)
    return CriterionVerdict("newman", inputs, True, True, _neg_pell(math.prod(ps)))


# -- Scholz -----------------------------------------------------------------


def _prime_of(delta: int) -> int:
    return 2 if delta == 8 else delta


def _quartic(num: int, den: int) -> int:
    """(num/den)_4 for positive prime discriminants with (num/den) = +1."""
    if den == 8:
        return quartic_symbol(num, 8)
    return quartic_symbol(num, den)


def _unit_char(delta: int, other: int) -> int:
    return unit_symbol(delta, 8 if other == 8 else other)


def observed_scholz_case(h: int, h_plus: int, norm: int) -> str:
    """Case label read off class numbers and unit norm alone."""
    if h_plus % 4 == 2 and h == h_plus and norm == -1:
        return "1"
    if h_plus == 2 * h and h_plus % 8 == 4 and norm == 1:
        return "2i"
    if h_plus == h and h % 8 == 4 and norm == -1:
        return "2ii"
    if h_plus % 8 == 0:
        return "2iii"
    return "none"


def scholz_classify(delta1: int, delta2: int) -> CriterionVerdict:
    from pellkit.forms import class_number_strict, class_number_wide

    inputs = {"delta1": delta1, "delta2": delta2}
    try:
        ok = (
            delta1 != delta2
            and all(x > 1 and prime_discriminant_factorization(x).n == 1 for x in (delta1, delta2))
            and is_fundamental_discriminant(delta1 * delta2)
        )
    except DomainError:
        ok = False
    if not ok:
        return _no("scholz", inputs)
    d = delta1 * delta2
    inputs["d"] = d
    checks: list[tuple[str, bool]] = []
    if kronecker(delta1, _prime_of(delta2)) == -1:
        label = "1"
    else:
        q12, q21 = _quartic(delta1, delta2), _quartic(delta2, delta1)
        label = "2i" if q12 != q21 else ("2ii" if q12 == -1 else "2iii")
        e1, e2 = _unit_char(delta1, delta2), _unit_char(delta2, delta1)
        inputs.update({"quartic_12": q12, "quartic_21": q21, "unit_12": e1, "unit_21": e2})
        checks.append(("unit identity", e1 == e2 == q12 * q21))
    h_plus = class_number_strict(d)
    h = class_number_wide(d)
    norm = -1 if _neg_pell(radicand(d)) else 1
    inputs.update({"h": h, "h_plus": h_plus, "norm": norm})
    truth = observed_scholz_case(h, h_plus, norm)
    return CriterionVerdict("scholz", inputs, True, label, truth, tuple(checks))


def governing_8h(p: int, r: int) -> CriterionVerdict:
    """8 | h(Q(sqrt(-rp))) iff (-r/p)_4 = +1, when (-r/p) = +1."""
    from pellkit.forms import class_number

    inputs = {"p": p, "r": r}
    if not (_odd_primes([p], 1, 4) and _odd_primes([r], 3, 4)) or kronecker(-r, p) != 1:
        return _no("governing_8h", inputs)
    h = class_number(-r * p)
    inputs["h"] = h
    return CriterionVerdict("governing_8h", inputs, True, quartic_symbol(-r, p) == 1, h % 8 == 0)


def redei_elementary(d: int) -> CriterionVerdict:
    """e4(d) = 0 for a sum-of-two-squares d predicts N(eps) = -1.

    Restricted to sums of two squares: for d = 12 the 2-class group is
    elementary abelian while 2 + sqrt(3) has norm +1.
    """
    from pellkit.redei import e4

    inputs = {"d": d}
    if d <= 1 or not is_fundamental_discriminant(d) or not is_sum_of_two_squares_disc(d) or e4(d) != 0:
        return _no("redei_elementary", inputs)
    return CriterionVerdict("redei_elementary", inputs, True, True, _neg_pell(radicand(d)))

