import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tameconf.arith import legendre, primes_up_to
from tameconf.errors import InvalidInput
from tameconf.signmatrix import (
    SignMatrix,
    all_sign_matrices,
    canonical_class,
    census,
    find_primes_for_sign_matrix,
    inertial_degree_matrix,
    qr_matrix_of_primes,
    qr_test,
)

NON_QR = SignMatrix.parse("0,-1,-1;-1,0,-1;1,1,0")
ODD_PRIMES = [int(p) for p in primes_up_to(10**4)[1:]]


def brute_find(S, bound):
    primes = [int(p) for p in primes_up_to(bound)[1:]]
    leg = {(a, b): legendre(a, b) for a in primes for b in primes if a != b}
    cells = [(i, j) for i in range(S.s) for j in range(S.s) if i != j]
    for tup in itertools.permutations(primes, S.s):
        if all(leg[tup[i], tup[j]] == S[i, j] for i, j in cells):
            return tup
    return None


def brute_census(s):
    classes = {}
    for S in all_sign_matrices(s):
        classes.setdefault(canonical_class(S), qr_test(S).is_qr)
    return len(classes), sum(classes.values())


# parsing

def test_parse_and_format_round_trip():
    text = "0,-1,-1;-1,0,-1;1,1,0"
    assert str(SignMatrix.parse(text)) == text
    assert NON_QR.s == 3 and NON_QR[2, 0] == 1


@pytest.mark.parametrize("bad", ["1,1;1,0", "0,2;1,0", "0,1,1;1,0", "a,b", ""])
def test_parse_rejects_malformed(bad):
    with pytest.raises(InvalidInput):
        SignMatrix.parse(bad)


# the QR test

def test_qr_test_rejects_non_qr_example():
    v = qr_test(NON_QR)
    assert not v.is_qr
    assert v.diagonal == (0, 0, -2)


def test_qr_test_on_primes_3_5_7():
    S = qr_matrix_of_primes([3, 5, 7])
    assert S == SignMatrix.parse("0,-1,-1;-1,0,-1;1,-1,0")
    v = qr_test(S)
    assert v.is_qr and v.diagonal == (0, 2, 0) and v.k == 2


def test_one_by_one_is_qr():
    assert qr_test(SignMatrix(((0,),))).is_qr


def test_qr_matrix_examples():
    assert qr_matrix_of_primes([5, 29]) == SignMatrix.parse("0,1;1,0")
    assert qr_matrix_of_primes([7]) == SignMatrix(((0,),))


@pytest.mark.parametrize("primes", [[3, 3], [2, 5], [9, 5], []])
def test_qr_matrix_rejects_bad_primes(primes):
    with pytest.raises(InvalidInput):
        qr_matrix_of_primes(primes)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(ODD_PRIMES), min_size=2, max_size=5, unique=True))
def test_prime_matrices_are_always_qr(primes):
    S = qr_matrix_of_primes(primes)
    assert all(S[i, j] == legendre(primes[i], primes[j]) for i in range(len(primes))
               for j in range(len(primes)) if i != j)
    assert qr_test(S).is_qr


def test_qr_test_is_permutation_invariant_s3():
    for S in all_sign_matrices(3):
        verdict = qr_test(S).is_qr
        for perm in itertools.permutations(range(3)):
            assert qr_test(S.conjugate(perm)).is_qr == verdict


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_symmetric_matrices_are_qr(s):
    for S in all_sign_matrices(s):
        if S.is_symmetric():
            assert qr_test(S).is_qr


# prime search

def test_find_primes_examples():
    assert find_primes_for_sign_matrix(SignMatrix.parse("0,-1;-1,0"), 100) == (3, 5)
    assert find_primes_for_sign_matrix(SignMatrix(((0,),)), 10) == (3,)
    assert find_primes_for_sign_matrix(NON_QR, 2000) is None


def test_find_primes_matches_exhaustive_scan():
    for S in all_sign_matrices(3):
        assert find_primes_for_sign_matrix(S, 200) == brute_find(S, 200)


def test_find_primes_bound_validation():
    with pytest.raises(InvalidInput):
        find_primes_for_sign_matrix(NON_QR, 2)


def test_find_primes_witness_is_correct_s4():
    rng = random.Random(11)
    qr = [S for S in all_sign_matrices(4) if qr_test(S).is_qr]
    for S in rng.sample(qr, 15):
        primes = find_primes_for_sign_matrix(S, 10**4)
        assert primes is not None and qr_matrix_of_primes(primes) == S


# inertial degree matrices

def test_inertial_degree_matrix_small_cases():
    assert inertial_degree_matrix(2, 0) == SignMatrix.parse("0,1;1,0")
    M = inertial_degree_matrix(3, 2)
    assert qr_test(M).is_qr
    assert sum(any(x == -1 for x in row) for row in M.rows) == 2


@pytest.mark.parametrize("s", [2, 3, 4, 5])
def test_inertial_degree_matrix_row_count(s):
    for r in range(s + 1):
        M = inertial_degree_matrix(s, r)
        assert qr_test(M).is_qr
        assert sum(any(x == -1 for x in row) for row in M.rows) == r


def test_inertial_degree_matrix_range():
    with pytest.raises(InvalidInput):
        inertial_degree_matrix(3, 4)
    with pytest.raises(InvalidInput):
        inertial_degree_matrix(3, -1)


# canonical classes and census

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**12 - 1), st.permutations(range(4)))
def test_canonical_class_is_orbit_invariant(mask, perm):
    S = _matrix_from_mask(4, mask)
    C = canonical_class(S)
    assert canonical_class(S.conjugate(perm)) == C
    assert canonical_class(C) == C


def _matrix_from_mask(s, mask):
    pos = [(i, j) for i in range(s) for j in range(s) if i != j]
    m = [[0] * s for _ in range(s)]
    for b, (i, j) in enumerate(pos):
        m[i][j] = -1 if (mask >> b) & 1 else 1
    return SignMatrix(tuple(tuple(r) for r in m))


def test_canonical_class_of_non_qr_example():
    conj = [NON_QR.conjugate(p) for p in itertools.permutations(range(3))]
    assert canonical_class(NON_QR) == min(conj, key=SignMatrix.flat)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_census_matches_orbit_enumeration(s):
    c = census(s)
    assert (c.sign_classes, c.qr_classes) == brute_census(s)


def test_census_frozen_values():
    got = [(census(s).sign_classes, census(s).qr_classes) for s in range(1, 5)]
    assert got == [(1, 1), (3, 3), (16, 10), (218, 47)]


@pytest.mark.slow
def test_census_s5():
    c = census(5)
    assert (c.sign_classes, c.qr_classes) == (9608, 314)


@pytest.mark.parametrize("s", [0, 6])
def test_census_range(s):
    with pytest.raises(InvalidInput):
        census(s)
