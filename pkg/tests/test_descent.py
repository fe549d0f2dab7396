import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pellkit.arith import is_squarefree
from pellkit.descent import (
    DescentEquation,
    descent_from_fundamental,
    divisors,
    enumerate_descents,
    local_obstruction,
    selmer_class,
    selmer_mul,
    solve_descent_brute,
    solve_ternary_legendre,
    verify_uniqueness,
)
from pellkit.errors import DomainError
from pellkit.pell import fundamental_solution_plus, solution_power

SQUAREFREE = [A for A in range(2, 400) if is_squarefree(A)]


def eq(M, N, c):
    return DescentEquation(c, M, N)


def test_enumerate_descents_counts():
    A6 = enumerate_descents(6)
    assert len(A6) == 8
    assert {e.as_tuple() for e in A6 if e.c == 1} == {(1, 6, 1), (2, 3, 1), (3, 2, 1), (6, 1, 1)}
    assert len(enumerate_descents(13)) == 4
    assert len(enumerate_descents(30)) == 16


def test_enumerate_descents_rejects_non_squarefree():
    with pytest.raises(DomainError):
        enumerate_descents(12)


@pytest.mark.parametrize("A, expected", [(6, ((3, 2, 1), 1, 1)), (5, ((5, 1, 1), 1, 2)), (3, ((3, 1, 2), 1, 1))])
def test_descent_from_fundamental_examples(A, expected):
    e, r, s = descent_from_fundamental(A)
    assert (e.as_tuple(), r, s) == expected


def test_descent_witness_satisfies_equation():
    for A in SQUAREFREE:
        e, r, s = descent_from_fundamental(A)
        assert e.evaluate(r, s) == e.c and e.A == A


def test_solve_descent_brute_examples():
    assert solve_descent_brute(eq(3, 2, 1), 10) == (1, 1)
    assert solve_descent_brute(eq(2, 3, 1), 10**4) is None
    assert solve_descent_brute(eq(5, 1, 1), 10) == (1, 2)


def test_local_obstruction_blocks_only_unsolvable():
    assert local_obstruction(eq(2, 3, 1)) is not None
    for A in SQUAREFREE[:80]:
        for e in enumerate_descents(A):
            if solve_descent_brute(e, 200) is not None:
                assert local_obstruction(e) is None, e


def test_verify_uniqueness_examples():
    assert verify_uniqueness(6).nontrivial.as_tuple() == (3, 2, 1)
    assert verify_uniqueness(5).nontrivial.as_tuple() == (5, 1, 1)
    rep = verify_uniqueness(34)
    assert rep.nontrivial.selmer_class() != 1
    assert len(rep.solvable_classes) == 2


def test_every_solvable_status_has_a_true_witness():
    for A in SQUAREFREE[:120]:
        rep = verify_uniqueness(A)
        assert rep.solvable_classes == tuple(sorted({1, rep.nontrivial.selmer_class()}))
        for e, status in rep.status.items():
            if status.startswith("solvable"):
                r, s = map(int, status[status.index("(") + 1 : -1].split(","))
                assert e.evaluate(r, s) == e.c


def test_unsolvable_statuses_agree_with_bounded_search():
    for A in SQUAREFREE[:60]:
        rep = verify_uniqueness(A)
        for e, status in rep.status.items():
            if not status.startswith("solvable"):
                assert solve_descent_brute(e, 2000) is None, (A, e)


@pytest.mark.parametrize("e, cls", [(eq(3, 2, 1), 3), (eq(3, 1, 2), 6), (eq(1, 7, 1), 1)])
def test_selmer_class_examples(e, cls):
    assert selmer_class(e) == cls


def test_selmer_mul_examples():
    assert selmer_mul(3, 6) == 2
    for e in divisors(2 * 105):
        assert selmer_mul(e, e) == 1
        assert selmer_mul(1, e) == e


@given(st.sampled_from(SQUAREFREE), st.data())
def test_selmer_group_axioms(A, data):
    group = divisors(2 * A)
    a, b, c = (data.draw(st.sampled_from(group)) for _ in range(3))
    assert selmer_mul(a, b) in group
    assert selmer_mul(a, b) == selmer_mul(b, a)
    assert selmer_mul(selmer_mul(a, b), c) == selmer_mul(a, selmer_mul(b, c))
    assert selmer_mul(a, a) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SQUAREFREE), st.integers(0, 3))
def test_odd_powers_give_the_same_class(A, k):
    # P_m for odd m reads off the same auxiliary equation as the fundamental solution
    m = 2 * k + 1
    P = solution_power(fundamental_solution_plus(A), m).x
    if P % 2:
        M = math.gcd(A, (P + 1) // 2)
        e = DescentEquation(1, M, A // M)
    else:
        M = math.gcd(A, P + 1)
        e = DescentEquation(2, M, A // M)
    assert e.selmer_class() == descent_from_fundamental(A)[0].selmer_class()


def test_ternary_legendre():
    for d1, d2 in ((5, 41), (13, 17), (5, 29)):
        x, y, z = solve_ternary_legendre(d1, d2, 100)
        assert x * x - d1 * y * y == d2 * z * z and (y, z) != (0, 0)
        assert math.gcd(math.gcd(x, y), z) == 1
    assert 11**2 - 5 * 4**2 == 41
