"""Parafree profiles, isomorphism tests, and witness-group searches.

A one-relator group with relator x1^p1 ... xn^pn (n >= 3, all
|pi| >= 2, gcd of the |pi| equal to 1) is parafree of rank n - 1: it
shares all lower central quotients with a free group of that rank but
is not free, needs n generators, and is freely indecomposable.  Free
products with free groups stay parafree; rank adds, and the minimal
generator count stays one above the rank (deviation 1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .census import CensusResult, lower_bound_census, prime_triple
from .presentations import (
    FreeGroup,
    FreeProduct,
    GroupSpec,
    ProductPower,
    exponent_gcd,
    normalized_exponents,
    validate_exponents,
)


@dataclass(frozen=True)
class EligibilityChecks:
    """Field-by-field record of the parafree hypotheses."""

    length_ok: bool        # n >= 3
    magnitudes_ok: bool    # every |pi| >= 2 after sign normalization
    gcd_ok: bool           # gcd(|p1|, ..., |pn|) == 1

    @property
    def eligible(self) -> bool:
        return self.length_ok and self.magnitudes_ok and self.gcd_ok

    def failures(self) -> list[str]:
        out = []
        if not self.length_ok:
            out.append("length_ok: relator needs at least 3 generator powers")
        if not self.magnitudes_ok:
            out.append("magnitudes_ok: every exponent must have absolute value >= 2")
        if not self.gcd_ok:
            out.append("gcd_ok: exponent magnitudes must have gcd 1")
        return out


class EligibilityError(ValueError):
    def __init__(self, checks: EligibilityChecks):
        self.checks = checks
        super().__init__("; ".join(checks.failures()))


def tuple_eligibility(exponents) -> EligibilityChecks:
    exps = tuple(exponents)
    magnitudes_ok = all(isinstance(p, int) and abs(p) >= 2 for p in exps)
    length_ok = len(exps) >= 3
    gcd_ok = magnitudes_ok and bool(exps) and exponent_gcd(exps) == 1
    return EligibilityChecks(length_ok, magnitudes_ok, gcd_ok)


@dataclass(frozen=True)
class ParafreeProfile:
    rank: int
    min_generators: int
    deviation: int
    freely_indecomposable: bool
    hypotheses: EligibilityChecks


def parafree_profile(spec: GroupSpec) -> ParafreeProfile:
    """Parafree invariants of an eligible one-relator group, possibly
    free-multiplied by free groups.  Raises EligibilityError with the
    failed hypotheses listed field by field."""
    if isinstance(spec, ProductPower):
        checks = tuple_eligibility(spec.exponents)
        if not checks.eligible:
            raise EligibilityError(checks)
        n = len(spec.exponents)
        return ParafreeProfile(
            rank=n - 1,
            min_generators=n,
            deviation=1,
            freely_indecomposable=True,
            hypotheses=checks,
        )
    if isinstance(spec, FreeProduct):
        free_rank = 0
        power = None
        for f in spec.factors:
            if isinstance(f, FreeGroup):
                free_rank += f.rank
            elif isinstance(f, ProductPower) and power is None:
                power = f
            else:
                raise ValueError(
                    "parafree profiles cover one product-power factor times free groups"
                )
        if power is None:
            raise ValueError("free product has no product-power factor")
        base = parafree_profile(power)
        return ParafreeProfile(
            rank=base.rank + free_rank,
            min_generators=base.min_generators + free_rank,
            deviation=1,
            freely_indecomposable=False,
            hypotheses=base.hypotheses,
        )
    raise ValueError(f"no parafree profile for {type(spec).__name__}")


def meskin_isomorphic(a, b) -> bool:
    """One-relator product-power groups are isomorphic exactly when the
    multisets of exponent magnitudes agree."""
    a = validate_exponents(a)
    b = validate_exponents(b)
    return Counter(normalized_exponents(a)) == Counter(normalized_exponents(b))


def family_member(rank: int, index: int) -> GroupSpec:
    """index-th member of the canonical rank-r parafree family.

    Rank 2: the one-relator group on the index-th consecutive prime
    triple (3,5,7), (11,13,17), ...; rank r > 2 multiplies in a free
    group of rank r - 2.  Distinct indices give non-isomorphic groups
    (disjoint exponent multisets)."""
    if rank < 2:
        raise ValueError(f"family ranks start at 2, got {rank}")
    power = ProductPower(prime_triple(index))
    if rank == 2:
        return power
    return FreeProduct((FreeGroup(rank - 2), power))


def witness_group(rank: int, min_components: int) -> tuple[GroupSpec, CensusResult]:
    """First family member of the given rank whose variety carries at
    least min_components maximal components at top dimension 3*rank,
    certified by the quotient lower bound."""
    if min_components < 1:
        raise ValueError(f"component target must be >= 1, got {min_components}")
    index = 0
    while True:
        group = family_member(rank, index)
        result = lower_bound_census(group, 3 * rank)
        if result.spectrum.count(3 * rank) >= min_components:
            return group, result
        index += 1
