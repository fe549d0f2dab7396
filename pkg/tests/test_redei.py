import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gf2_rank_numpy
from pellkit.arith import fundamental_discriminants, is_sum_of_two_squares_disc, kronecker, primes_up_to
from pellkit.errors import DomainError
from pellkit.forms import class_group_structure_2part
from pellkit.redei import (
    C4Splitting,
    F2Matrix,
    damey_payan_check,
    e4,
    enumerate_c4_splittings,
    f2_rank,
    is_c4_splitting,
    kingan_r4,
    kingan_tournament,
    redei_matrix,
    splitting_product,
)

SOS = [d for d in fundamental_discriminants(5, 20000) if is_sum_of_two_squares_disc(d)]


def test_redei_matrix_examples():
    assert redei_matrix(65).to_lists() == [[1, 1], [1, 1]]
    assert redei_matrix(205).to_lists() == [[0, 0], [0, 0]]
    assert redei_matrix(1105).to_lists() == [[0, 1, 1], [1, 1, 0], [1, 0, 1]]


def test_redei_matrix_rows_sum_to_zero():
    for d in list(fundamental_discriminants(-3000, -3)) + list(fundamental_discriminants(5, 3000)):
        for row in redei_matrix(d).to_lists():
            assert sum(row) % 2 == 0, d


def test_redei_matrix_rejects_non_fundamental():
    with pytest.raises(DomainError):
        redei_matrix(20)


def test_f2_rank_examples():
    assert f2_rank(F2Matrix.from_lists([[1, 1], [1, 1]])) == 1
    assert f2_rank(F2Matrix.from_lists([[0, 0], [0, 0]])) == 0
    assert f2_rank(redei_matrix(1105)) == 2


@given(st.lists(st.lists(st.integers(0, 1), min_size=6, max_size=6), min_size=1, max_size=8))
def test_f2_rank_matches_numpy_elimination(rows):
    assert f2_rank(F2Matrix.from_lists(rows)) == gf2_rank_numpy(rows)


@pytest.mark.parametrize("d, expected", [(65, 0), (205, 1), (1105, 0), (5, 0), (-4, 0)])
def test_e4_examples(d, expected):
    assert e4(d) == expected


def test_e4_matches_class_group_both_signs():
    for d in list(fundamental_discriminants(-1500, -3)) + list(fundamental_discriminants(5, 1500)):
        e2, e4_forms, _ = class_group_structure_2part(d)
        assert e4(d) == e4_forms, d
        assert e2 == redei_matrix(d).n - 1


def test_enumerate_splittings_examples():
    assert [s.as_set() for s in enumerate_c4_splittings(205)] == [frozenset({1, 205}), frozenset({5, 41})]
    assert [s.as_set() for s in enumerate_c4_splittings(65)] == [frozenset({1, 65})]
    assert len(enumerate_c4_splittings(1105)) == 1


def test_splitting_count_is_power_of_e4():
    for d in SOS[:3000]:
        assert len(enumerate_c4_splittings(d)) == 2 ** e4(d), d


def test_splitting_definition_by_symbols():
    # every prime of delta1 sees delta2 as a square, and vice versa
    for d in SOS[:500]:
        for s in enumerate_c4_splittings(d):
            for p in (q for q in primes_up_to(abs(d)) if d % q == 0):
                other = s.delta2 if s.delta1 % p == 0 else s.delta1
                assert kronecker(other, p) == 1


def test_splitting_product_examples():
    s = C4Splitting(5, 41)
    assert splitting_product(s, s).as_set() == {1, 205}
    one = enumerate_c4_splittings(205)[0]
    assert splitting_product(one, s) == s
    with pytest.raises(DomainError):
        splitting_product(s, C4Splitting(5, 13))


def test_splitting_product_closes_in_rank_two():
    d = next(d for d in SOS if e4(d) == 2)
    group = enumerate_c4_splittings(d)
    a, b, c = group[1:]
    assert splitting_product(a, b) == c


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([d for d in SOS if e4(d) >= 1]), st.data())
def test_splitting_product_group_axioms(d, data):
    group = enumerate_c4_splittings(d)
    a, b, c = (data.draw(st.sampled_from(group)) for _ in range(3))
    ab = splitting_product(a, b)
    assert ab in group
    assert ab == splitting_product(b, a)
    assert splitting_product(ab, c) == splitting_product(a, splitting_product(b, c))
    assert splitting_product(a, a).is_trivial()


def test_is_c4_splitting_rejects_wrong_product():
    assert not is_c4_splitting(205, 5, 13)
    assert not is_c4_splitting(65, 5, 13)


def test_damey_payan_examples():
    assert damey_payan_check(65)["r4_plus"] == 0
    assert damey_payan_check(65)["r4_minus"] in (0, 1)
    rep = damey_payan_check(2)
    assert (rep["r4_plus"], rep["r4_minus"]) in ((0, 0), (0, 1))
    with pytest.raises(DomainError):
        damey_payan_check(12)


def test_kingan_tournament_example():
    a, v = kingan_tournament((3, 7))
    assert a.entry(0, 1) == 0 and a.entry(1, 0) == 1
    assert a.entry(0, 0) == 1
    assert v == 0b01
    with pytest.raises(DomainError):
        kingan_tournament((3, 5))


def test_kingan_small_products():
    p3 = [p for p in primes_up_to(200) if p % 4 == 3]
    for n in (1, 2, 3):
        for t in itertools.combinations(p3, n):
            if math.prod(t) <= 10**4:
                rep = kingan_r4(t)
                assert rep["r4_plus"] == rep["e4_plus"] and rep["r4_minus"] == rep["e4_minus"]
