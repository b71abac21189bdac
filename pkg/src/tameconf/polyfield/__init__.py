"""Number fields given by integer polynomials: factoring mod p, discriminants,
the Dedekind criterion, p-maximal orders and prime splitting patterns."""
from .modp import factor_mod_p_list
from .order import Order, local_pieces, p_maximal_order
from .poly import IntPoly, discriminant, resultant
from .splitting import (
    EntryReport,
    IndexObstruction,
    SplittingPattern,
    dedekind_index_test,
    factor_discriminant,
    factor_mod_p,
    is_irreducible,
    ramified_primes,
    splitting_pattern,
    verify_realization_data,
)


def verify_table_entry(entry) -> EntryReport:
    """Check a realizable corpus entry's polynomial against its listed primes
    and splitting patterns."""
    real = entry.realization
    if real is None:
        return EntryReport("fail", ["entry has no realization to verify"])
    claims = [{"p": c.p, "e": c.e, "f": c.f, "pattern": c.pattern} for c in real.primes]
    return verify_realization_data(real.polynomial, claims)


__all__ = [
    "EntryReport", "IndexObstruction", "IntPoly", "Order", "SplittingPattern", "dedekind_index_test",
    "discriminant", "factor_discriminant", "factor_mod_p", "factor_mod_p_list", "is_irreducible",
    "local_pieces", "p_maximal_order", "ramified_primes", "resultant", "splitting_pattern",
    "verify_realization_data", "verify_table_entry",
]
