"""Finite groups of small order and their tame decomposition configurations."""
from .catalog import CATALOG_NAMES, catalog_group
from .configs import (
    NO_OBSTRUCTION,
    TameConfig,
    Verdict,
    abelian_invariants,
    abelianization,
    automorphisms,
    canonical_key,
    config_quotient,
    cyclic_subgroups,
    enumerate_configs,
    equivalent,
    is_c4xc2,
    is_elementary_abelian_2,
    is_q8,
    known_obstruction,
    rank,
    rank_by_search,
    sign_matrix_of_config,
)
from .group import (
    FiniteGroup,
    Subgroup,
    abelian_group,
    compose,
    coords,
    cyclic_group,
    direct_product,
    from_coords,
    group_from_generators,
    parse_cycles,
    perm_to_cycles,
)


def normal_closure(G: FiniteGroup, elems) -> Subgroup:
    return G.normal_closure(elems)


__all__ = [
    "CATALOG_NAMES", "FiniteGroup", "NO_OBSTRUCTION", "Subgroup", "TameConfig", "Verdict",
    "abelian_group", "abelian_invariants", "abelianization", "automorphisms", "canonical_key",
    "catalog_group", "compose", "config_quotient", "coords", "cyclic_group", "cyclic_subgroups",
    "direct_product", "enumerate_configs", "equivalent", "from_coords", "group_from_generators",
    "is_c4xc2", "is_elementary_abelian_2", "is_q8", "known_obstruction", "normal_closure",
    "parse_cycles", "perm_to_cycles", "rank", "rank_by_search", "sign_matrix_of_config",
]
