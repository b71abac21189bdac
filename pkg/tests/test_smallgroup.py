import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tameconf.errors import InvalidInput, ResourceLimit, UnsupportedScope
from tameconf.signmatrix import SignMatrix
from tameconf.smallgroup import (
    CATALOG_NAMES,
    Subgroup,
    TameConfig,
    abelian_group,
    abelian_invariants,
    automorphisms,
    catalog_group,
    config_quotient,
    cyclic_group,
    enumerate_configs,
    equivalent,
    group_from_generators,
    known_obstruction,
    normal_closure,
    rank,
    rank_by_search,
    sign_matrix_of_config,
)

CATALOG_ORDERS = {"C2^2": 4, "C2^3": 8, "C4xC2": 8, "D8": 8, "Q8": 8, "D10": 10, "A4": 12,
                  "F20": 20, "S4": 24, "A5": 60, "S5": 120, "PSL(2,7)": 168}
CONFIG_COUNTS = {"C4xC2": 9, "D8": 7, "Q8": 3, "S4": 4, "A5": 6, "S5": 7, "PSL(2,7)": 9}


def config(G, pairs):
    sub = lambda words: G.subgroup([G.element(w) for w in words])
    return TameConfig(G, tuple(sub(t) for t, _ in pairs), tuple(sub(z) for _, z in pairs))


def brute_automorphism_count(G):
    """Bijections fixing the identity that respect the table."""
    others = [x for x in range(G.order) if x != G.identity]
    count = 0
    for perm in itertools.permutations(others):
        phi = dict(zip(others, perm))
        phi[G.identity] = G.identity
        if all(phi[G.mul(a, b)] == G.mul(phi[a], phi[b]) for a in range(G.order) for b in range(G.order)):
            count += 1
    return count


# construction

@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_orders(name):
    assert catalog_group(name).order == CATALOG_ORDERS[name]


def test_group_from_generators_examples():
    assert group_from_generators(["(1 2 3 4)", "(1 3)"]).order == 8
    assert group_from_generators(["()"]).order == 1
    psl = group_from_generators(["(1 2)(3 6)", "(2 6 7)(3 4 5)"])
    assert psl.order == 168 and not psl.is_abelian()


def test_group_from_generators_cap():
    with pytest.raises(ResourceLimit):
        group_from_generators(["(1 2 3 4 5 6 7 8)", "(1 2)"], max_order=10**4)


def test_unknown_catalog_name():
    with pytest.raises(InvalidInput):
        catalog_group("C7")


def test_group_laws_hold():
    for name in ["Q8", "D8", "A4", "F20"]:
        G = catalog_group(name)
        e = G.identity
        for a, b, c in itertools.product(range(G.order), repeat=3):
            assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
        assert all(G.mul(a, e) == a == G.mul(e, a) for a in range(G.order))


def test_normal_closure_examples():
    S4 = catalog_group("S4")
    assert normal_closure(S4, [S4.element("(1 2)")]).order == 24
    assert normal_closure(S4, [S4.element("(1 2)(3 4)")]).order == 4
    assert normal_closure(S4, [S4.identity]).order == 1


# rank and abelian invariants

@pytest.mark.parametrize("name,expected", [("Q8", 2), ("PSL(2,7)", 1), ("C2^3", 3), ("C4xC2", 2),
                                           ("D8", 2), ("A5", 1), ("S5", 1), ("S4", 1), ("A4", 1)])
def test_rank_values(name, expected):
    assert rank(catalog_group(name)) == expected


@pytest.mark.parametrize("name", [n for n in CATALOG_NAMES if CATALOG_ORDERS[n] <= 48])
def test_rank_agrees_with_search(name):
    G = catalog_group(name)
    assert rank(G) == rank_by_search(G)


@pytest.mark.parametrize("moduli,invariants", [([4, 2], [2, 4]), ([6, 4], [2, 12]), ([2, 2, 2], [2, 2, 2]),
                                               ([3, 5], [15]), ([12, 18], [6, 36])])
def test_abelian_invariants(moduli, invariants):
    assert abelian_invariants(abelian_group(moduli)) == invariants


# automorphisms

@pytest.mark.parametrize("name,count", [("Q8", 24), ("D8", 8), ("C4xC2", 8), ("C2^3", 168), ("C2^2", 6)])
def test_automorphism_counts(name, count):
    G = catalog_group(name)
    assert len(automorphisms(G)) == count


@pytest.mark.parametrize("name", ["Q8", "D8", "C4xC2"])
def test_automorphism_count_matches_brute_force(name):
    G = catalog_group(name)
    assert len(automorphisms(G)) == brute_automorphism_count(G)


def test_automorphisms_of_cyclic_and_larger_groups():
    assert len(automorphisms(cyclic_group(3))) == 2
    assert len(automorphisms(catalog_group("S4"))) == 24
    assert len(automorphisms(catalog_group("A5"))) == 120
    assert len(automorphisms(catalog_group("PSL(2,7)"))) == 336


# configurations

@pytest.mark.parametrize("name", sorted(CONFIG_COUNTS))
def test_enumeration_counts(name):
    assert len(enumerate_configs(catalog_group(name))) == CONFIG_COUNTS[name]


@pytest.mark.parametrize("name", ["C4xC2", "D8", "Q8", "S4", "D10", "A4", "F20"])
def test_enumerated_configs_are_valid_and_distinct(name):
    G = catalog_group(name)
    cfgs = enumerate_configs(G)
    for cfg in cfgs:
        assert cfg.problems() == []
        for T, Z in zip(cfg.T, cfg.Z):
            assert T.is_cyclic() and T.is_normal_in(Z) and T <= Z
    for a, b in itertools.combinations(cfgs, 2):
        assert not equivalent(a, b)


def test_enumeration_rejects_rank_three():
    with pytest.raises(UnsupportedScope):
        enumerate_configs(catalog_group("C2^3"))


def test_invalid_configuration_rejected():
    G = catalog_group("D8")
    with pytest.raises(InvalidInput):
        config(G, [(["r"], ["r"]), (["r^2"], ["r^2"])])  # does not generate
    with pytest.raises(InvalidInput):
        config(G, [(["r"], ["r"])])  # wrong number of pairs
    with pytest.raises(InvalidInput):
        config(G, [(["r", "s"], ["r", "s"]), (["s"], ["s"])])  # T_1 not cyclic


def test_equivalence_under_swap_and_automorphism():
    G = catalog_group("D8")
    a = config(G, [(["r"], ["r"]), (["s"], ["s"])])
    b = config(G, [(["s"], ["s"]), (["r"], ["r"])])
    c = config(G, [(["r"], ["r"]), (["rs"], ["rs"])])
    assert equivalent(a, b) and equivalent(a, c)


# quotients

def test_quotient_of_z4_squared_by_doubles():
    G = abelian_group([4, 4])
    cfg = config(G, [(["e1"], ["e1"]), (["e2"], ["e2"])])
    N = G.subgroup([G.mul(x, x) for x in range(G.order)])
    q = config_quotient(cfg, N)
    assert q is not None and q.group.order == 4 and abelian_invariants(q.group) == [2, 2]
    assert all(T.order == 2 for T in q.T)


def test_quotient_by_whole_group_drops_rank():
    G = catalog_group("C4xC2")
    cfg = config(G, [(["x1"], ["x1"]), (["y"], ["y"])])
    assert config_quotient(cfg, G.whole()) is None


def test_quotient_of_z6_squared_by_triples():
    G = abelian_group([6, 6])
    cfg = config(G, [(["e1"], ["e1", "e2^2"]), (["e2"], ["e2"])])
    N = G.subgroup([G.power(x, 3) for x in range(G.order)])
    q = config_quotient(cfg, N)
    assert q.group.order == 9 and abelian_invariants(q.group) == [3, 3]
    assert [T.order for T in q.T] == [3, 3]
    assert [Z.order for Z in q.Z] == [9, 3]


def test_quotient_needs_normal_subgroup():
    G = catalog_group("D8")
    cfg = config(G, [(["r"], ["r"]), (["s"], ["s"])])
    with pytest.raises(InvalidInput):
        config_quotient(cfg, G.subgroup([G.element("s")]))


@pytest.mark.parametrize("name", ["C4xC2", "D8", "Q8", "S4"])
def test_quotient_configs_are_valid(name):
    G = catalog_group(name)
    for cfg in enumerate_configs(G):
        for N in G.normal_subgroups():
            q = config_quotient(cfg, N)
            if q is not None:
                assert q.problems() == []


# obstructions

def test_non_qr_sign_matrix_config_is_obstructed():
    G = catalog_group("C2^3")
    cfg = config(G, [(["x1"], ["x1", "x2x3"]), (["x2"], ["x2", "x1x3"]), (["x3"], ["x3"])])
    assert sign_matrix_of_config(cfg) == SignMatrix.parse("0,-1,-1;-1,0,-1;1,1,0")
    v = known_obstruction(cfg)
    assert v.obstructed and v.reason == "qr-matrix"


def test_qr_sign_matrix_config_is_not_obstructed():
    G = catalog_group("C2^3")
    cfg = config(G, [(["x1"], ["x1", "x2x3"]), (["x2"], ["x2", "x1x3"]), (["x3"], ["x3", "x2"])])
    assert not known_obstruction(cfg).obstructed


def test_z4z2_rule_examples():
    G = catalog_group("C4xC2")
    bad = config(G, [(["x1"], ["x1"]), (["y"], ["x1", "y"])])
    assert known_obstruction(bad).reason == "z4z2-reciprocity"
    good = config(G, [(["x1"], ["x1"]), (["y"], ["y", "x1^2"])])
    assert not known_obstruction(good).obstructed


def test_q8_only_split_config_survives():
    cfgs = enumerate_configs(catalog_group("Q8"))
    verdicts = [(cfg.is_split(), known_obstruction(cfg)) for cfg in cfgs]
    assert sum(split for split, _ in verdicts) == 1
    for split, v in verdicts:
        assert v.obstructed != split
        if v.obstructed:
            assert v.reason == "q8-witt"


def test_obstruction_propagates_from_quotient():
    # C4 x C4 maps onto C4 x C2; the z4z2 obstruction lifts
    G = abelian_group([4, 4])
    cfg = config(G, [(["e1"], ["e1"]), (["e2"], ["e1", "e2"])])
    v = known_obstruction(cfg)
    assert v.obstructed and v.reason.startswith("quotient:")


def test_split_configs_never_obstructed():
    for name in ["C4xC2", "D8", "Q8", "S4", "A5"]:
        for cfg in enumerate_configs(catalog_group(name)):
            if cfg.is_split():
                assert not known_obstruction(cfg).obstructed


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["C4xC2", "D8", "Q8"]), st.data())
def test_obstruction_invariant_under_automorphisms(name, data):
    G = catalog_group(name)
    cfg = data.draw(st.sampled_from(enumerate_configs(G)))
    phi = data.draw(st.sampled_from(automorphisms(G)))
    assert known_obstruction(cfg.apply(phi)) == known_obstruction(cfg)
    assert equivalent(cfg.apply(phi), cfg)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_c2_cubed_configs(data):
    """Obstruction on (Z/2)^3 is exactly the QR test on S_Z."""
    from tameconf.signmatrix import qr_test

    G = catalog_group("C2^3")
    pairs = []
    for i, name in enumerate(["x1", "x2", "x3"]):
        others = [n for n in ["x1", "x2", "x3"] if n != name]
        frob = data.draw(st.sampled_from(["e", others[0], others[1], others[0] + others[1]]))
        pairs.append(([name], [name, frob]))
    cfg = config(G, pairs)
    S = sign_matrix_of_config(cfg)
    assert known_obstruction(cfg).obstructed == (not qr_test(S).is_qr)
