"""Range sweeps that check every module against its independent oracle.

Each suite returns a SweepResult with the number of cases checked, the
failures (as flat records) and timing. Suites never stop at the first
failure; the caller decides what a failure means.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from pellkit.arith import (
    fundamental_discriminants,
    is_squarefree,
    is_sum_of_two_squares_disc,
    primes_up_to,
)
from pellkit.errors import DomainError, InternalError, TheoremViolation

SEED = 20240601


@dataclass
class SweepResult:
    suite: str
    bound: int
    checked: int = 0
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures

    def fail(self, record: dict) -> None:
        self.failures.append(record)

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + by

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "bound": self.bound,
            "checked": self.checked,
            "failed": len(self.failures),
            "first_failure": self.failures[0] if self.failures else None,
            "counts": dict(sorted(self.counts.items())),
        }


def _guarded(result: SweepResult, record: dict, fn, *args):
    """Run fn, turning theorem violations into failure records."""
    try:
        return fn(*args)
    except (TheoremViolation, InternalError) as exc:
        result.fail({**record, "error": str(exc)})
        return None


# -- descent ----------------------------------------------------------------


def sweep_uniqueness(bound: int = 2000) -> SweepResult:
    from pellkit.descent import verify_uniqueness

    res = SweepResult("uniqueness", bound)
    for A in range(2, bound + 1):
        if is_squarefree(A):
            res.checked += 1
            _guarded(res, {"A": A}, verify_uniqueness, A)
    return res


# -- criteria ---------------------------------------------------------------


def _record_verdict(res: SweepResult, v) -> None:
    key = v.criterion_id + ("_" + v.inputs["clause"] if "clause" in v.inputs else "")
    if not v.applicable:
        return
    res.checked += 1
    res.bump(key)
    if not v.agrees:
        res.bump(key + ":disagree")
        res.fail(v.as_record())


def _bounded_tuples(primes, n: int, product_bound: int, ordered: bool = False):
    """Tuples of distinct primes with product <= product_bound."""
    primes = sorted(primes)

    def rec(start, prefix, prod):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for i in range(start, len(primes)):
            p = primes[i]
            if prod * p ** (n - len(prefix)) > product_bound:
                break
            yield from rec(i + 1, prefix + [p], prod * p)

    for t in rec(0, [], 1):
        if ordered:
            yield from itertools.permutations(t)
        else:
            yield t


def _random_tuples(primes, n: int, product_bound: int, draws: int, seed: int):
    """`draws` seeded samples (without replacement) from the bounded tuples;
    all of them when there are fewer."""
    population = list(_bounded_tuples(primes, n, product_bound))
    if len(population) <= draws:
        return population
    return sorted(random.Random(seed).sample(population, draws))


def sweep_criteria(
    bound: int = 10**4,
    tuple_bound: int = 10**6,
    sample_bound: int = 10**8,
    draws: int = 10**4,
    seed: int = SEED,
) -> SweepResult:
    """All criteria with primes <= bound.

    Single primes are exhaustive up to bound. Tuples of two and three
    primes are exhaustive up to product tuple_bound (their ground truth
    is a continued fraction of that size). Four-prime Richaud tuples
    (draws // 10 of them, every ordering) and five-prime tuples (draws of
    them) are seeded samples from all tuples with product <= sample_bound.
    """
    from pellkit import criteria as C

    res = SweepResult("criteria", bound)
    P = [p for p in primes_up_to(bound) if p > 2]
    p14 = [p for p in P if p % 4 == 1]
    f5 = [p for p in P if p % 8 == 5]
    o1 = [p for p in P if p % 8 == 1]
    for p in P:
        _record_verdict(res, C.legendre_prime(p))
        _record_verdict(res, C.dirichlet_two_term(p))
        _record_verdict(res, C.dirichlet_quartic(p))
    for p, q in _bounded_tuples(p14, 2, tuple_bound):
        _record_verdict(res, C.dirichlet_pq(p, q))
    # Richaud: d carries an extra factor 2
    half = tuple_bound // 2
    for p in f5:
        _record_verdict(res, C.richaud([p], "R1a"))
    for t in _bounded_tuples(f5, 2, half):
        _record_verdict(res, C.richaud(t, "R1b"))
    for t in _bounded_tuples(f5, 3, half, ordered=True):
        _record_verdict(res, C.richaud(t, "R2"))
    for p in f5:
        for a in o1:
            if p * a > half:
                break
            _record_verdict(res, C.richaud([p, a], "R3a"))
    five_one = sorted(set(f5) | set(o1))
    for t in _bounded_tuples(five_one, 3, half, ordered=True):
        _record_verdict(res, C.richaud(t, "R3b"))
        _record_verdict(res, C.richaud(t, "R4"))
    for t in _random_tuples(f5, 4, sample_bound, draws // 10, seed):
        for perm in itertools.permutations(t):
            for clause in ("S1", "S2", "S3"):
                _record_verdict(res, C.richaud(perm, clause))
    for t in _bounded_tuples(p14, 3, tuple_bound):
        for fn in (C.tano, C.trotter, C.newman):
            _record_verdict(res, fn(t))
    for t in _random_tuples(p14, 5, sample_bound, draws, seed + 5):
        for fn in (C.tano, C.trotter, C.newman):
            _record_verdict(res, fn(t))
    for p in p14:
        _record_verdict(res, C.trotter((p,)))
    return res


def implication_chain(primes) -> bool:
    """newman applicable => tano applicable => trotter applicable."""
    from pellkit.criteria import newman, tano, trotter

    n, t, r = newman(primes).applicable, tano(primes).applicable, trotter(primes).applicable
    return (not n or t) and (not t or r)


def sweep_scholz(bound: int = 10**5) -> SweepResult:
    from pellkit.criteria import scholz_classify

    res = SweepResult("scholz", bound)
    pd = [8] + [p for p in primes_up_to(bound) if p % 4 == 1]
    for i, a in enumerate(pd):
        for b in pd[i + 1 :]:
            if a * b > bound:
                break
            v = _guarded(res, {"delta1": a, "delta2": b}, scholz_classify, a, b)
            if v is not None:
                _record_verdict(res, v)
                res.bump(f"case {v.prediction}")
    return res


def sweep_governing(bound: int = 2 * 10**5) -> SweepResult:
    from pellkit.criteria import governing_8h

    res = SweepResult("governing", bound)
    P = primes_up_to(bound // 3)
    for p in (p for p in P if p % 4 == 1):
        for r in (r for r in P if r % 4 == 3):
            if p * r > bound:
                break
            _record_verdict(res, governing_8h(p, r))
    return res


def sweep_redei_elementary(bound: int = 10**5) -> SweepResult:
    from pellkit.criteria import redei_elementary

    res = SweepResult("redei-elementary", bound)
    for d in fundamental_discriminants(5, bound):
        _record_verdict(res, redei_elementary(d))
    return res


# -- redei, graphs, forms -----------------------------------------------------


def sweep_redei_vs_forms(bound: int = 5000) -> SweepResult:
    from pellkit.forms import class_group_structure_2part
    from pellkit.redei import e4

    res = SweepResult("redei-vs-forms", bound)
    for d in fundamental_discriminants(-bound, bound):
        res.checked += 1
        a, b = e4(d), class_group_structure_2part(d)[1]
        if a != b:
            res.fail({"d": d, "redei": a, "forms": b})
    return res


def sweep_evd(bound: int = 10**5, max_n: int = 8) -> SweepResult:
    from pellkit.graphs import build_graph, enumerate_evds, is_odd_graph, odd_implies_negative_check
    from pellkit.redei import e4

    res = SweepResult("evd", bound)
    for d in fundamental_discriminants(5, bound):
        if not is_sum_of_two_squares_disc(d):
            continue
        g = build_graph(d)
        if g.n > max_n:
            continue
        res.checked += 1
        res.bump(f"n={g.n}")
        _guarded(res, {"d": d, "check": "evd"}, enumerate_evds, d)
        if is_odd_graph(g) != (e4(d) == 0):
            res.fail({"d": d, "check": "odd iff e4 = 0"})
        _guarded(res, {"d": d, "check": "odd => N = -1"}, odd_implies_negative_check, d)
    return res


def sweep_pumpluen(bound: int = 10**4) -> SweepResult:
    from pellkit.graphs import pumpluen_check

    res = SweepResult("pumpluen", bound)
    for d in fundamental_discriminants(5, bound):
        if is_sum_of_two_squares_disc(d):
            res.checked += 1
            _guarded(res, {"d": d}, pumpluen_check, d)
    return res


def sweep_damey_payan(bound: int = 10**4) -> SweepResult:
    from pellkit.redei import damey_payan_check

    res = SweepResult("damey-payan", bound)
    for m in range(2, bound + 1):
        if is_squarefree(m):
            res.checked += 1
            _guarded(res, {"m": m}, damey_payan_check, m)
    return res


def sweep_kingan(bound: int = 10**4, max_primes: int = 3) -> SweepResult:
    """Products of at most max_primes primes = 3 mod 4 with product <= bound."""
    from pellkit.redei import kingan_r4

    res = SweepResult("kingan", bound)
    P = [p for p in primes_up_to(bound) if p % 4 == 3]
    for n in range(1, max_primes + 1):
        for t in _bounded_tuples(P, n, bound):
            res.checked += 1
            res.bump(f"n={n}")
            rep = _guarded(res, {"primes": list(t)}, kingan_r4, t)
            if rep is not None and rep["v_in_image"]:
                res.bump("greater branch")
    return res


# -- pell ---------------------------------------------------------------------


def sweep_rd_families(bound: int = 50) -> SweepResult:
    from pellkit.pell import (
        RD_FAMILIES,
        cf_expand,
        fundamental_unit,
        rd_cf_closed_form,
        rd_family_d,
        rd_recognize,
        rd_unit,
        solution_power,
    )

    res = SweepResult("rd-families", bound)
    for family in RD_FAMILIES:
        a_range = range(1, bound + 1) if family.startswith("a2") else (1,)
        for a in a_range:
            for k in range(1, bound + 1):
                d = rd_family_d(family, k, a)
                rec = {"family": family, "k": k, "a": a, "d": d}
                try:
                    closed = rd_cf_closed_form(family, k, a)
                except DomainError:
                    continue
                res.checked += 1
                if closed != cf_expand(d):
                    res.fail({**rec, "check": "expansion", "closed": str(closed), "cf": str(cf_expand(d))})
                form = rd_recognize(d)
                if form is None:
                    res.fail({**rec, "check": "recognize"})
                    continue
                u, eps = rd_unit(form), fundamental_unit(d)
                if (u.x, u.y) == (eps.x, eps.y):
                    res.bump("unit = eps")
                elif (u.x, u.y) == (solution_power(eps, 2).x, solution_power(eps, 2).y):
                    res.bump("unit = eps^2")
                else:
                    res.fail({**rec, "check": "unit"})
    return res


def sweep_pell(bound: int = 10**5, chakravala_bound: int = 2000) -> SweepResult:
    """CF period parity = unit norm = direct search for x^2 - d y^2 = -1.

    Up to chakravala_bound the fundamental unit is also compared with the
    cyclic method.
    """
    from pellkit.pell import chakravala, fundamental_unit, negative_pell_solvable, small_norm_solution

    res = SweepResult("pell", bound)
    for d in range(2, bound + 1):
        if math.isqrt(d) ** 2 == d:
            continue
        res.checked += 1
        eps = fundamental_unit(d)
        parity = negative_pell_solvable(d)
        direct = small_norm_solution(d, -1) is not None
        if not (parity == (eps.norm == -1) == direct):
            res.fail({"d": d, "parity": parity, "norm": eps.norm, "direct": direct})
        if d <= chakravala_bound:
            neg, pos = chakravala(d)
            plus = eps if eps.norm == 1 else eps * eps
            if (pos.x, pos.y) != (plus.x, plus.y) or (neg is not None) != (eps.norm == -1):
                res.fail({"d": d, "check": "chakravala"})
            elif neg is not None and (neg.x, neg.y) != (eps.x, eps.y):
                res.fail({"d": d, "check": "chakravala -1"})
    return res


SUITES = {
    "uniqueness": sweep_uniqueness,
    "criteria": sweep_criteria,
    "redei-vs-forms": sweep_redei_vs_forms,
    "evd": sweep_evd,
    "pumpluen": sweep_pumpluen,
    "damey-payan": sweep_damey_payan,
    "kingan": sweep_kingan,
    "rd-families": sweep_rd_families,
    "scholz": sweep_scholz,
    "governing": sweep_governing,
    "redei-elementary": sweep_redei_elementary,
    "pell": sweep_pell,
}


def run_suite(name: str, bound: int | None = None) -> SweepResult:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[name]
    t0 = time.perf_counter()
    res = fn() if bound is None else fn(bound)
    res.seconds = time.perf_counter() - t0
    return res
