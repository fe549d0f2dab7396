"""Acceptance criteria 1-12.

Each test records one PASS/FAIL line; the block is printed at the end of
the module (also visible under ``pytest -v``). Run on its own with

    pytest -s tests/test_acceptance.py
"""

import math
import time
from collections import Counter
from decimal import Decimal
from fractions import Fraction

import pytest

from oracles import min_unit_numpy
from pellkit.arith import is_squarefree
from pellkit.density import alpha, one_minus_alpha, scan_negative_pell
from pellkit.descent import descent_from_fundamental, verify_uniqueness
from pellkit.errors import TheoremViolation
from pellkit.graphs import build_graph, is_odd_graph
from pellkit.pell import chakravala, fundamental_unit, negative_pell_solvable
from pellkit.sweeps import (
    sweep_criteria,
    sweep_evd,
    sweep_kingan,
    sweep_pell,
    sweep_pumpluen,
    sweep_rd_families,
    sweep_redei_vs_forms,
    sweep_scholz,
)

RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="module", autouse=True)
def acceptance_report(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    lines = [f"ACCEPTANCE {k:2d} {'PASS' if ok else 'FAIL'}  {msg}" for k, (ok, msg) in sorted(RESULTS.items())]
    if tr is None:
        print("\n".join(lines))
        return
    tr.ensure_newline()
    tr.write_sep("=", "acceptance criteria")
    for line in lines:
        tr.write_line(line)


def record(k: int, ok: bool, msg: str) -> None:
    RESULTS[k] = (ok, msg)
    assert ok, msg


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def sweep_line(res, seconds):
    return f"{res.suite}: {res.checked} checked, {len(res.failures)} failed, {seconds:.1f}s"


def test_criterion_01_redei_constant():
    (a, b), dt = timed(lambda: (alpha(6), one_minus_alpha(6)))
    ok = a == Decimal("0.419422") and b == Decimal("0.580577") and dt < 1
    record(1, ok, f"alpha(6) = {a}, 1 - alpha = {b}, {dt:.3f}s")


def test_criterion_02_worked_graph_example():
    t0 = time.perf_counter()
    odd1, odd2 = is_odd_graph(build_graph(1105)), is_odd_graph(build_graph(5945))
    neg1, neg2 = negative_pell_solvable(1105), negative_pell_solvable(5945)
    dt = time.perf_counter() - t0
    ok = (odd1, odd2, neg1, neg2) == (True, False, True, False) and dt < 1
    record(2, ok, f"odd(1105)={odd1} odd(5945)={odd2} neg(1105)={neg1} neg(5945)={neg2}, {dt:.3f}s")


def test_criterion_03_dirichlet_uniqueness():
    t0 = time.perf_counter()
    bad, checked = [], 0
    for A in range(2, 2001):
        if not is_squarefree(A):
            continue
        checked += 1
        try:
            rep = verify_uniqueness(A)
        except TheoremViolation as exc:
            bad.append((A, str(exc)))
            continue
        nontrivial = [c for c in rep.solvable_classes if c != 1]
        if len(nontrivial) != 1 or nontrivial[0] != descent_from_fundamental(A)[0].selmer_class():
            bad.append((A, rep.solvable_classes))
    dt = time.perf_counter() - t0
    record(3, not bad and dt < 300, f"{checked} squarefree A, {len(bad)} exceptions, {dt:.1f}s")


@pytest.mark.xfail(
    strict=True,
    reason="Richaud's four-prime clauses S1-S3 admit counterexamples (e.g. 5*13*53*29); "
    "every other criterion agrees on all inputs",
)
def test_criterion_04_criteria_soundness():
    res, dt = timed(sweep_criteria)
    by_clause = Counter(
        f"{f['criterion_id']}:{f['inputs'].get('clause', '')}".rstrip(":") for f in res.failures
    )
    detail = ", ".join(f"{k} {v}/{res.counts.get(k.replace(':', '_'), '?')}" for k, v in sorted(by_clause.items()))
    msg = sweep_line(res, dt) + (f"; disagreements {detail}" if detail else "")
    record(4, res.ok and dt < 600, msg)


def test_criterion_05_redei_vs_forms():
    res, dt = timed(sweep_redei_vs_forms, 5000)
    record(5, res.ok and dt < 600, sweep_line(res, dt))


def test_criterion_06_evd_count_and_bijection():
    res, dt = timed(sweep_evd, 10**5, 8)
    record(6, res.ok, sweep_line(res, dt))


def test_criterion_07_pumpluen():
    res, dt = timed(sweep_pumpluen, 10**4)
    record(7, res.ok and dt < 600, sweep_line(res, dt))


def test_criterion_08_scholz():
    res, dt = timed(sweep_scholz, 10**5)
    cases = {k: v for k, v in res.counts.items() if k.startswith("case")}
    record(8, res.ok, sweep_line(res, dt) + f"; {cases}")


def test_criterion_09_rd_families():
    res, dt = timed(sweep_rd_families, 50)
    record(9, res.ok, sweep_line(res, dt) + f"; {res.counts}")


def test_criterion_10_pell_oracles():
    t0 = time.perf_counter()
    cap = 10**6
    exhaustive = capped = 0
    bad = []
    for d in range(2, 2001):
        if math.isqrt(d) ** 2 == d:
            continue
        eps = fundamental_unit(d)
        found = min_unit_numpy(d, min(eps.y, cap))
        if eps.y <= cap:
            exhaustive += 1
            if found != (eps.x, eps.y, eps.norm):
                bad.append(d)
        else:
            # no unit with y <= cap, and the cyclic method lands on the same unit
            capped += 1
            neg, plus = chakravala(d)
            if found is not None or (neg or plus) != eps:
                bad.append(d)
    res = sweep_pell(10**5, chakravala_bound=0)
    cyc_bad = [
        d
        for d in range(2, 10**5 + 1)
        if math.isqrt(d) ** 2 != d and (chakravala(d)[0] is not None) != negative_pell_solvable(d)
    ]
    dt = time.perf_counter() - t0
    msg = (
        f"units d<=2000: {exhaustive} exhaustive (y<=10^6), {capped} searched to y=10^6 plus cyclic method, "
        f"{len(bad)} mismatches; decision d<=10^5: {res.checked} checked, "
        f"{len(res.failures) + len(cyc_bad)} mismatches; {dt:.1f}s"
    )
    record(10, not bad and res.ok and not cyc_bad, msg)


def test_criterion_11_kingan():
    res, dt = timed(sweep_kingan, 10**4, 3)
    ok = res.ok and res.counts.get("greater branch", 0) > 0
    record(11, ok, sweep_line(res, dt) + f"; {res.counts}")


def test_criterion_12_density_scan():
    rep, dt = timed(scan_negative_pell, 10**5)
    s = rep.summary()
    exact = Fraction(s["ratio"]) == Fraction(rep.solvable, rep.total)
    refs = s["alpha_ref"] == "0.419422" and s["one_minus_alpha_ref"] == "0.580577"
    ok = dt < 120 and exact and refs and "exceeds_alpha" in s
    msg = (
        f"X=10^5: {rep.solvable}/{rep.total} = {s['ratio_decimal']}, "
        f"exceeds alpha: {s['exceeds_alpha']} (informational), {dt:.1f}s"
    )
    record(12, ok, msg)


if __name__ == "__main__":
    raise SystemExit(pytest.main(["-q", "-s", __file__]))
