import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.solvers.diophantine.diophantine import diop_DN

from pellkit import criteria as C
from pellkit.arith import kronecker, primes_up_to
from pellkit.pell import negative_pell_solvable
from pellkit.sweeps import implication_chain

P14 = [p for p in primes_up_to(400) if p % 4 == 1]


def truth_neg(d):
    return bool(diop_DN(d, -1))


@pytest.mark.parametrize("p, norm", [(13, -1), (3, -2), (7, 2)])
def test_legendre_prime_examples(p, norm):
    v = C.legendre_prime(p)
    assert v.inputs["norm"] == norm and v.applicable and v.agrees
    assert diop_DN(p, norm)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(primes_up_to(10**4)[1:]))
def test_legendre_prime_holds(p):
    v = C.legendre_prime(p)
    assert v.agrees
    assert bool(diop_DN(p, v.inputs["norm"]))


@pytest.mark.parametrize("p, M, N, r, s", [(3, 3, 2, 1, 1), (5, 10, 1, 1, 3), (7, 2, 7, 2, 1)])
def test_dirichlet_two_term_examples(p, M, N, r, s):
    assert M * r * r - N * s * s == 1
    v = C.dirichlet_two_term(p)
    assert v.applicable and v.agrees


def test_dirichlet_quartic_examples():
    v = C.dirichlet_quartic(41)
    assert v.applicable and v.agrees
    assert 82 * 1 - 81 == 1
    assert not C.dirichlet_quartic(17).applicable
    assert C.dirichlet_quartic(73).applicable == (pow(2, 18, 73) != 1)


def test_dirichlet_pq_examples():
    v = C.dirichlet_pq(5, 13)
    assert v.inputs["branch"] == "quadratic" and v.agrees and negative_pell_solvable(65)
    v = C.dirichlet_pq(13, 17)
    assert kronecker(13, 17) == 1
    assert v.agrees in (True, None)
    assert not C.dirichlet_pq(5, 41).applicable


def test_richaud_examples():
    v = C.richaud([5], "R1a")
    assert v.inputs["d"] == 10 and v.agrees
    v = C.richaud([5, 13], "R1b")
    assert v.inputs["d"] == 130 and v.ground_truth == truth_neg(130)
    assert not C.richaud([17], "R1a").applicable
    assert not C.richaud([5], "nonsense").applicable


def test_richaud_two_and_three_prime_clauses():
    f5 = [p for p in primes_up_to(120) if p % 8 == 5]
    o1 = [p for p in primes_up_to(200) if p % 8 == 1]
    for t in itertools.permutations(f5, 3):
        assert C.richaud(t, "R2").agrees in (True, None)
    for p in f5:
        for a in o1:
            assert C.richaud([p, a], "R3a").agrees in (True, None)
        for a, b in itertools.permutations(o1[:8], 2):
            assert C.richaud([p, a, b], "R3b").agrees in (True, None)
        for q in f5:
            for a in o1[:8]:
                assert C.richaud([p, q, a], "R4").agrees in (True, None)


@pytest.mark.parametrize(
    "primes, clause, d",
    [((5, 13, 53, 29), "S1", 99905), ((37, 197, 5, 13), "S2", 473785), ((5, 13, 29, 101), "S3", 190385)],
)
def test_richaud_four_prime_clauses_have_counterexamples(primes, clause, d):
    # the hypotheses hold but x^2 - d y^2 = -1 has no solution
    v = C.richaud(primes, clause)
    assert v.applicable and v.inputs["d"] == d
    assert v.prediction is True and v.ground_truth is False
    assert diop_DN(d, -1) == []


def test_tano_examples():
    v = C.tano((5, 13, 17))
    assert v.applicable and v.agrees and negative_pell_solvable(1105)
    v = C.tano((5, 13, 37))
    assert v.applicable and v.agrees and truth_neg(2405)
    assert not C.tano((5, 29, 41)).applicable


def test_trotter_examples():
    assert C.trotter((5, 13, 17)).applicable
    assert not C.trotter((5, 29, 41)).applicable
    v = C.trotter((13,))
    assert v.applicable and v.agrees


def test_newman_examples():
    assert C.newman((5, 13, 37)).applicable
    assert not C.newman((5, 13, 17)).applicable
    syms = [kronecker(a, b) for a, b in itertools.combinations((13, 17, 29), 2)]
    assert C.newman((13, 17, 29)).applicable == all(s == -1 for s in syms)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5]).flatmap(lambda n: st.lists(st.sampled_from(P14), min_size=n, max_size=n, unique=True)))
def test_newman_tano_trotter_chain(primes):
    assert implication_chain(primes)
    for fn in (C.tano, C.trotter, C.newman):
        assert fn(primes).agrees in (True, None)


def test_dirichlet_pq_overlaps_scholz_case_one():
    for p, q in itertools.combinations(P14[:25], 2):
        if kronecker(p, q) == -1:
            s = C.scholz_classify(p, q)
            assert s.prediction == "1"
            assert C.dirichlet_pq(p, q).agrees


def test_scholz_examples():
    v = C.scholz_classify(5, 13)
    assert (v.prediction, v.inputs["h"], v.inputs["norm"]) == ("1", 2, -1) and v.agrees
    v = C.scholz_classify(5, 41)
    assert v.prediction == "2i" and v.inputs["h_plus"] == 2 * v.inputs["h"] and v.inputs["norm"] == 1
    assert v.agrees


def test_scholz_case_2ii_found_and_confirmed():
    f = [p for p in primes_up_to(500) if p % 4 == 1]
    hits = [
        (p, q)
        for p, q in itertools.combinations(f, 2)
        if kronecker(p, q) == 1 and C._quartic(p, q) == -1 and C._quartic(q, p) == -1
    ]
    assert hits
    for p, q in hits[:10]:
        v = C.scholz_classify(p, q)
        assert v.prediction == "2ii" and v.inputs["norm"] == -1 and v.inputs["h"] % 8 == 4
        assert v.agrees


@pytest.mark.parametrize(
    "h, h_plus, norm, label",
    [(2, 2, -1, "1"), (2, 4, 1, "2i"), (4, 4, -1, "2ii"), (8, 8, -1, "2iii"), (8, 16, 1, "2iii"), (3, 3, -1, "none")],
)
def test_observed_scholz_case(h, h_plus, norm, label):
    assert C.observed_scholz_case(h, h_plus, norm) == label


def test_governing_examples():
    v = C.governing_8h(13, 3)
    assert v.applicable and pow(10, 3, 13) == 12 and v.prediction is False and v.agrees
    assert not C.governing_8h(17, 7).applicable  # (-7/17) = -1
    assert kronecker(-7, 17) == -1


def test_redei_elementary_examples():
    assert C.redei_elementary(65).agrees
    assert not C.redei_elementary(205).applicable
    assert C.redei_elementary(5).agrees


def test_verdict_record_shape():
    rec = C.tano((5, 13, 17)).as_record()
    assert set(rec) == {"criterion_id", "inputs", "applicable", "prediction", "truth", "agrees"}
    assert C.tano((5, 29, 41)).agrees is None
