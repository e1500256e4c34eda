"""Dimension of SL(2,C) representation varieties by power-word recursion.

For exponents (p1, ..., pn) and a sign e, write D_e(m) for the
dimension of the solution set of x1^p1 ... xm^pm = e*I inside SL2C^m.
The recursion peels off the last letter:

    D_e(1) = 0 if |p1| == 2 and e == +1 else 2
    D_e(m) = max(D_e(m-1) + 2*not_two(|pm|),   last letter lands on +I
                 D_-e(m-1) + 2,                last letter lands on -I
                 3*(m-1))                      generic prefix, finite fiber

Each step's maximum is bounded by 3*(m-1) + 1.  Whenever one of the
two degenerate-prefix candidates reaches the generic floor 3*(m-1) at
the top step, the variety is certified reducible; otherwise
reducibility is left undetermined (for n >= 4 it is an open problem,
and the recursion never certifies those).
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import (
    CyclicFinite,
    FreeGroup,
    FreeProduct,
    GroupSpec,
    ProductPower,
    validate_exponents,
)
from .traces import central_root_spectrum

CERTIFIED_REDUCIBLE = "certified-reducible"
IRREDUCIBLE = "irreducible"
UNDETERMINED = "undetermined"


def not_two(x: int) -> int:
    """0 if x == 2 else 1; half the dimension of {A : A^|x| = I} for |x| >= 2."""
    return 0 if x == 2 else 1


def _check_sign(sign: int):
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")


def base_dim(p: int, sign: int) -> int:
    """Dimension of {A : A^p = sign*I}: 0 only for (|p|, sign) == (2, +1)."""
    _check_sign(sign)
    k = abs(p)
    if k < 2:
        raise ValueError(f"exponent {p} has absolute value < 2")
    if sign == 1:
        return 2 * not_two(k)
    return 2


def dimension_table(exponents) -> tuple[dict[int, int], ...]:
    """D_e(m) for m = 1..n and both signs; entry m-1 maps sign -> dim."""
    exps = validate_exponents(exponents)
    table = [{1: base_dim(exps[0], 1), -1: base_dim(exps[0], -1)}]
    for m in range(2, len(exps) + 1):
        k = abs(exps[m - 1])
        prev = table[-1]
        row = {}
        for sign in (1, -1):
            row[sign] = max(prev[sign] + 2 * not_two(k), prev[-sign] + 2, 3 * (m - 1))
        table.append(row)
    return tuple(table)


@dataclass(frozen=True)
class RecursionStep:
    """One peel of the recursion at prefix length m (word length m)."""

    length: int
    sign: int
    same_sign_branch: int  # D_e(m-1) + 2*not_two(|pm|)
    flip_sign_branch: int  # D_-e(m-1) + 2
    generic_floor: int     # 3*(m-1)
    dim: int
    certified: bool        # max of the two branches >= generic floor

    @property
    def candidates(self) -> tuple[int, int, int]:
        return (self.same_sign_branch, self.flip_sign_branch, self.generic_floor)


@dataclass(frozen=True)
class DimResult:
    dim: int
    reducibility: str
    steps: tuple[RecursionStep, ...]


def product_power_dim(exponents, sign: int = 1) -> DimResult:
    """Dimension of {(m1..mn) : m1^p1 ... mn^pn = sign*I} in SL2C^n.

    Invariant under permuting the tuple and under negating all
    exponents.  Certified reducible exactly when the top recursion
    step's degenerate branches reach the generic floor; single-letter
    words report undetermined (their census lives elsewhere).
    """
    _check_sign(sign)
    exps = validate_exponents(exponents)
    table = dimension_table(exps)
    steps = []
    for m in range(2, len(exps) + 1):
        k = abs(exps[m - 1])
        prev = table[m - 2]
        same = prev[sign] + 2 * not_two(k)
        flip = prev[-sign] + 2
        floor = 3 * (m - 1)
        steps.append(
            RecursionStep(
                length=m,
                sign=sign,
                same_sign_branch=same,
                flip_sign_branch=flip,
                generic_floor=floor,
                dim=max(same, flip, floor),
                certified=max(same, flip) >= floor,
            )
        )
    dim = table[-1][sign]
    if steps and steps[-1].certified:
        reducibility = CERTIFIED_REDUCIBLE
    else:
        reducibility = UNDETERMINED
    return DimResult(dim, reducibility, tuple(steps))


def representation_dim(spec: GroupSpec) -> DimResult:
    """Dimension of the full representation variety Hom(G, SL2C).

    Free groups give the irreducible ambient power 3n; cyclic and
    one-relator product-power groups come from the census and the
    recursion; free products add dimensions factorwise.
    """
    if isinstance(spec, FreeGroup):
        return DimResult(3 * spec.rank, IRREDUCIBLE, ())
    if isinstance(spec, CyclicFinite):
        spectrum = central_root_spectrum(spec.order, 1)
        # the variety is a disjoint union of at least two closed pieces
        return DimResult(spectrum.dimension(), CERTIFIED_REDUCIBLE, ())
    if isinstance(spec, ProductPower):
        return product_power_dim(spec.exponents, 1)
    if isinstance(spec, FreeProduct):
        dim = 0
        statuses = []
        steps: tuple[RecursionStep, ...] = ()
        for f in spec.factors:
            sub = representation_dim(f)
            dim += sub.dim
            statuses.append(sub.reducibility)
            steps = steps + sub.steps
        if CERTIFIED_REDUCIBLE in statuses:
            reducibility = CERTIFIED_REDUCIBLE
        elif all(s == IRREDUCIBLE for s in statuses):
            reducibility = IRREDUCIBLE
        else:
            reducibility = UNDETERMINED
        return DimResult(dim, reducibility, steps)
    raise TypeError(f"not a group spec: {spec!r}")


def freeness_test(num_generators: int, dim: int) -> bool:
    """A group on n generators is free of rank n iff its representation
    variety fills the whole ambient dimension 3n."""
    if not isinstance(num_generators, int) or num_generators < 0:
        raise ValueError(f"generator count must be an integer >= 0, got {num_generators!r}")
    return dim == 3 * num_generators
