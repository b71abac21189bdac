import random

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from tameconf.arith import primes_up_to, star_value
from tameconf.errors import InvalidInput, PartialResult
from tameconf.polyfield import (
    IndexObstruction,
    IntPoly,
    SplittingPattern,
    dedekind_index_test,
    discriminant,
    factor_discriminant,
    factor_mod_p,
    is_irreducible,
    p_maximal_order,
    ramified_primes,
    resultant,
    splitting_pattern,
    verify_realization_data,
)
from tameconf.polyfield import modp

X = sympy.Symbol("x")
PRIMES = [int(p) for p in primes_up_to(10**4)]
OCTIC = IntPoly.parse("x^8 - x^6 - 4*x^4 - 16*x^2 + 256")
QUARTIC = IntPoly.parse("x^4 - x - 1")


def to_sympy(f: IntPoly):
    return sympy.Poly(sum(c * X**i for i, c in enumerate(f.coeffs)), X)


def vp(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def random_irreducible(rng, degree, size=6):
    while True:
        coeffs = [rng.randint(-size, size) for _ in range(degree)] + [1]
        f = IntPoly(tuple(coeffs))
        if coeffs[0] != 0 and to_sympy(f).is_irreducible:
            return f


def change_generator(f: IntPoly, a):
    """Characteristic polynomial of a(theta) for a root theta of f."""
    y = sympy.Symbol("y")
    fy = sum(c * y**i for i, c in enumerate(f.coeffs))
    g = sympy.Poly(sympy.resultant(fy, X - a(y), y), X)
    cs = [int(c) for c in reversed(g.all_coeffs())]
    lead = cs[-1]
    assert abs(lead) == 1
    return IntPoly(tuple(c * lead for c in cs))


# polynomials

def test_parse_forms():
    assert IntPoly.parse("x^4 - x - 1").coeffs == (-1, -1, 0, 0, 1)
    assert IntPoly.parse("x**3+2*x").coeffs == (0, 2, 0, 1)
    assert IntPoly.parse("1,0,-5").coeffs == (1, 0, -5)
    assert str(IntPoly.parse("x^4 - x - 1")) == "x^4 - x - 1"


def test_parse_rejects_garbage():
    with pytest.raises(InvalidInput):
        IntPoly.parse("x^2 + y")
    with pytest.raises(InvalidInput):
        IntPoly.parse("x^17 + 1")


@pytest.mark.parametrize("text,d", [("x^4 - x - 1", -283), ("x^2 - 5", 20), ("x^3 - x", 4), ("x^2 + 1", -4),
                                    ("x^3 - x^2 - 2*x - 8", -2012)])
def test_discriminant_examples(text, d):
    assert discriminant(IntPoly.parse(text)) == d


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=8))
def test_discriminant_matches_sympy(coeffs):
    f = IntPoly(tuple(coeffs) + (1,))
    assert discriminant(f) == sympy.discriminant(to_sympy(f).as_expr(), X)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6), st.lists(st.integers(-9, 9), min_size=2, max_size=6))
def test_resultant_matches_sylvester_determinant(a, b):
    from sympy.polys.subresultants_qq_zz import sylvester

    assume(a[-1] != 0 and b[-1] != 0)
    fa, fb = (sum(c * X**i for i, c in enumerate(v)) for v in (a, b))
    assert resultant(a, b) == sympy.Matrix(sylvester(fa, fb, X)).det()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=5), st.lists(st.integers(-9, 9), min_size=2, max_size=4),
       st.lists(st.integers(-9, 9), min_size=2, max_size=4))
def test_resultant_is_multiplicative(f, g, h):
    assume(f[-1] and g[-1] and h[-1])
    gh = [0] * (len(g) + len(h) - 1)
    for i, x in enumerate(g):
        for j, y in enumerate(h):
            gh[i + j] += x * y
    assert resultant(f, gh) == resultant(f, g) * resultant(f, h)
    assert resultant(g, f) == (-1) ** ((len(f) - 1) * (len(g) - 1)) * resultant(f, g)


# factoring mod p

def test_factor_mod_p_examples():
    f = IntPoly.parse("x^2 + 1")
    assert factor_mod_p(f, 5) == [((2, 1), 1), ((3, 1), 1)]
    assert factor_mod_p(f, 3) == [((1, 0, 1), 1)]
    fac = factor_mod_p(QUARTIC, 283)
    assert sorted(k for _, k in fac) == [1, 1, 2]
    assert all(len(g) == 2 for g, _ in fac)


def test_factor_mod_p_requires_unit_lead():
    with pytest.raises(InvalidInput):
        factor_mod_p(IntPoly((1, 0, 3)), 3)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-10**4, 10**4), min_size=1, max_size=8), st.sampled_from(PRIMES[:300]))
def test_factors_multiply_back(coeffs, p):
    f = IntPoly(tuple(coeffs) + (1,))
    fac = factor_mod_p(f, p)
    assert modp.expand([(list(g), k) for g, k in fac], p) == modp.trim(f.coeffs, p)
    for g, _ in fac:
        assert modp.is_irreducible(list(g), p)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=7), st.sampled_from([2, 3, 5, 7, 11, 101, 8191]))
def test_factor_degrees_match_sympy(coeffs, p):
    f = IntPoly(tuple(coeffs) + (1,))
    ours = sorted((len(g) - 1, k) for g, k in factor_mod_p(f, p))
    _, theirs = sympy.factor_list(to_sympy(f).as_expr(), X, modulus=p)
    assert ours == sorted((sympy.degree(g, X), k) for g, k in theirs)


def test_factoring_is_deterministic():
    f = IntPoly.parse("x^8 - 5*x^6 + 28*x^4 + 15*x^2 + 9")
    assert factor_mod_p(f, 10007) == factor_mod_p(f, 10007)


# Dedekind criterion

@pytest.mark.parametrize("text,p,ok", [("x^2 - 5", 2, False), ("x^4 - x - 1", 283, True), ("x^2 + 1", 5, True),
                                       ("x^2 + 3", 2, False), ("x^3 - x^2 - 2*x - 8", 2, False)])
def test_dedekind_examples(text, p, ok):
    assert dedekind_index_test(IntPoly.parse(text), p) is ok


def test_dedekind_rejects_reducible():
    with pytest.raises(InvalidInput):
        dedekind_index_test(IntPoly.parse("x^2 - 4"), 3)


def test_irreducibility():
    assert is_irreducible(QUARTIC) and is_irreducible(OCTIC)
    assert not is_irreducible(IntPoly.parse("x^4 + 4"))  # Sophie Germain
    # reducible mod every prime, so only the exact fallback can certify it
    assert is_irreducible(IntPoly.parse("x^4 - 10*x^2 + 1"))


# splitting patterns

def test_splitting_examples():
    assert splitting_pattern(QUARTIC, 283).pairs == ((2, 1), (1, 1), (1, 1))
    assert splitting_pattern(IntPoly.parse("x^2 + 1"), 7).pairs == ((1, 2),)
    pat = splitting_pattern(OCTIC, 29)
    assert (2, 1) in pat.pairs and pat.degree == 8


@pytest.mark.parametrize("d,pairs", [(5, ((1, 2),)), (-3, ((1, 2),)), (17, ((1, 1), (1, 1))),
                                     (-7, ((1, 1), (1, 1))), (3, ((2, 1),)), (-1, ((2, 1),))])
def test_quadratic_fields_at_two(d, pairs):
    # x^2 - d with d = 1 mod 4 needs the maximal order at 2
    assert splitting_pattern(IntPoly((-d, 0, 1)), 2).pairs == pairs


def test_classic_common_index_divisor():
    # 2 splits completely although x^3 - x^2 - 2x - 8 has no three distinct roots mod 2
    f = IntPoly.parse("x^3 - x^2 - 2*x - 8")
    assert isinstance(splitting_pattern(f, 2, maximal=False), IndexObstruction)
    pat = splitting_pattern(f, 2)
    assert pat.pairs == ((1, 1), (1, 1), (1, 1)) and pat.method == "maximal-order"


def test_pattern_equality_ignores_method():
    assert SplittingPattern(((1, 1), (2, 1)), "dedekind") == SplittingPattern(((2, 1), (1, 1)), "maximal-order")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_pattern_degree_and_unramified_readout(seed, degree):
    rng = random.Random(seed)
    f = random_irreducible(rng, degree)
    d = discriminant(f)
    for p in PRIMES[:15]:
        pat = splitting_pattern(f, p)
        assert pat.degree == degree
        if d % p:
            assert not pat.ramified
            assert sorted(f_ for _, f_ in pat.pairs) == sorted(len(g) - 1 for g, _ in factor_mod_p(f, p))


def test_pattern_independent_of_generator():
    """Patterns agree for f and for the polynomial of another generator of
    the same field; the two sides often take different routes."""
    rng = random.Random(99)
    mixed = checked = 0
    transforms = [lambda y: y**2 + y, lambda y: y**2 + 3 * y + 1, lambda y: 1 + 2 * y - y**2, lambda y: y**3 - y + 2]
    for _ in range(25):
        f = random_irreducible(rng, rng.randint(2, 5), size=12)
        d = discriminant(f)
        a = rng.choice(transforms)
        g = change_generator(f, a)
        if not to_sympy(g).is_irreducible:
            continue
        for p in [q for q in PRIMES[:8] if d % q == 0]:
            pf, pg = splitting_pattern(f, p), splitting_pattern(g, p)
            assert pf == pg, (str(f), str(g), p)
            checked += 1
            mixed += pf.method != pg.method
    assert checked >= 20 and mixed >= 3


def test_wild_prime_regression():
    # Newton polygon of the x^2 factor at 2: one segment of slope 1 with
    # residual polynomial y^2 + y + 1, so 2 is unramified here
    f = IntPoly.parse("x^5 - 11*x^4 + 2*x^3 + 7*x^2 - 6*x + 4")
    assert splitting_pattern(f, 2).pairs == ((1, 3), (1, 2))
    assert p_maximal_order(list(f.coeffs), 2).index_denominator() == 2


def test_round2_index_and_discriminant_identity():
    """For tame p: v_p(disc f) - 2 v_p(index) = sum (e - 1) f."""
    rng = random.Random(7)
    checked = 0
    for _ in range(60):
        n = rng.randint(2, 5)
        f = random_irreducible(rng, n, size=30)
        d = discriminant(f)
        for p in [q for q in PRIMES[:12] if d % q == 0 and q > n]:
            O = p_maximal_order(list(f.coeffs), p)
            index = O.index_denominator()
            assert index.denominator == 1
            pat = splitting_pattern(f, p)
            assert vp(d, p) - 2 * vp(index.numerator, p) == sum((e - 1) * f_ for e, f_ in pat.pairs)
            checked += 1
    assert checked >= 30


def test_octic_with_four_ramified_primes_above_37():
    f = IntPoly.parse("x^8 - 5*x^6 + 28*x^4 + 15*x^2 + 9")
    pat = splitting_pattern(f, 37)
    assert pat.pairs == ((2, 1),) * 4


# ramified primes and discriminant factoring

def test_ramified_primes_examples():
    assert set(ramified_primes(QUARTIC)) == {283}
    assert set(ramified_primes(OCTIC)) == {5, 29}
    assert set(ramified_primes(IntPoly.parse("x^2 - 5"))) == {5}


def test_quadratic_ramification_matches_star_value():
    for l in PRIMES[1:60]:
        assert set(ramified_primes(IntPoly((-star_value(l), 0, 1)))) == {l}


def test_factor_discriminant():
    assert factor_discriminant(-283) == {283: 1}
    assert factor_discriminant(2**5 * 3 * 10007**2) == {2: 5, 3: 1, 10007: 2}
    big = 1000000000039 * 1000000000061
    assert factor_discriminant(6 * big, candidates=[1000000000039]) == {2: 1, 3: 1, 1000000000039: 1,
                                                                        1000000000061: 1}


def test_factor_discriminant_partial():
    a, b = 1000000000039, 1000000000061
    assert a * b > 2**64
    with pytest.raises(PartialResult) as info:
        factor_discriminant(12 * a * b, limit=10**5)
    assert info.value.unresolved == a * b


# table-row verification

def test_verify_quartic_row():
    rep = verify_realization_data(QUARTIC.coeffs, [{"p": 283, "e": 2, "f": 1, "pattern": [[2, 1], [1, 1], [1, 1]]}])
    assert rep.passed, rep.details


def test_verify_septic_row():
    f = IntPoly.parse("x^7 - 3*x^6 + 4*x^5 - 3*x^3 + 4*x^2 - x - 1")
    claim = {"p": 6971, "e": 2, "f": 1, "pattern": [[2, 1], [2, 1], [1, 1], [1, 1], [1, 1]]}
    rep = verify_realization_data(f.coeffs, [claim])
    assert rep.passed, rep.details


def test_verify_detects_wrong_prime():
    rep = verify_realization_data(QUARTIC.coeffs, [{"p": 281, "e": 2, "f": 1, "pattern": [[2, 1], [1, 1], [1, 1]]}])
    assert rep.status == "fail"


def test_verify_detects_wrong_pattern_and_wild_claim():
    rep = verify_realization_data(QUARTIC.coeffs, [{"p": 283, "e": 2, "f": 1, "pattern": [[2, 1], [1, 2]]}])
    assert rep.status == "fail"
    rep = verify_realization_data(IntPoly.parse("x^2 + 1").coeffs, [{"p": 2, "e": 2, "f": 1, "pattern": [[2, 1]]}])
    assert rep.status == "fail" and any("tame" in d for d in rep.details)


def test_verify_checks_e_against_pattern():
    rep = verify_realization_data(QUARTIC.coeffs, [{"p": 283, "e": 4, "f": 1, "pattern": [[2, 1], [1, 1], [1, 1]]}])
    assert rep.status == "fail"
