"""Trace polynomials and the component census of {A in SL2C : A^p = +-I}.

The solution set of A^p = sign*I splits into conjugation-invariant
pieces: central points (+-I when they satisfy the equation) and, for
each unordered eigenvalue pair {z, 1/z} with z^p = sign and z != +-1,
the conjugation orbit of diag(z, 1/z).  Central pieces are isolated
points; every orbit piece is 2-dimensional and carries the constant
trace z + 1/z.  Traces are kept exact as rational multiples of pi in
2*cos(pi * angle) form so classes compare exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class TraceClass:
    """Exact trace value 2*cos(pi * angle) with angle in [0, 1]."""

    angle: Fraction

    def __post_init__(self):
        if not (0 <= self.angle <= 1):
            raise ValueError(f"trace angle {self.angle} outside [0, 1]")

    @property
    def value(self) -> float:
        return 2.0 * math.cos(math.pi * float(self.angle))

    @property
    def central(self) -> bool:
        return self.angle == 0 or self.angle == 1

    def label(self) -> str:
        if self.angle == 0:
            return "+2"
        if self.angle == 1:
            return "-2"
        return f"2cos({self.angle.numerator}pi/{self.angle.denominator})"


@dataclass
class ComponentSpectrum:
    """Map dimension -> number of maximal components of that dimension."""

    entries: dict[int, int]
    exact: bool = True

    def __post_init__(self):
        cleaned = {int(d): int(c) for d, c in self.entries.items() if c}
        for d, c in cleaned.items():
            if d < 0 or c < 0:
                raise ValueError(f"invalid spectrum entry {d}: {c}")
        self.entries = dict(sorted(cleaned.items()))

    def dimension(self) -> int:
        if not self.entries:
            raise ValueError("empty spectrum has no dimension")
        return max(self.entries)

    def count(self, dim: int) -> int:
        return self.entries.get(dim, 0)

    def total(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class CentralRootClasses:
    """Component data for {A : A^p = sign*I}.

    central: signs eta with (eta*I)^p = sign*I, each an isolated point.
    orbits:  one TraceClass per 2-dimensional conjugation orbit.
    """

    power: int
    sign: int
    central: tuple[int, ...]
    orbits: tuple[TraceClass, ...]


def _check_power_sign(p: int, sign: int):
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"power must be an integer >= 2, got {p!r}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")


def central_root_classes(p: int, sign: int) -> CentralRootClasses:
    """Enumerate components of the solution set of A^p = sign*I in SL2C.

    Solutions other than +-I are conjugates of diag(z, 1/z) with
    z^p = sign; the unordered pair {z, 1/z} indexes one orbit.  For
    sign=+1 the candidate angles are 2j/p, for sign=-1 they are
    (2j+1)/p, folded into (0, 1) and excluding the central angles.
    """
    _check_power_sign(p, sign)
    central = []
    if sign == 1:
        central.append(1)
        if p % 2 == 0:
            central.append(-1)
    else:
        if p % 2 == 1:
            central.append(-1)
    orbits = []
    if sign == 1:
        numerators = range(2, p, 2)  # angle 2j/p, j = 1 .. ceil(p/2)-1
    else:
        numerators = range(1, p, 2)  # angle (2j+1)/p
    for num in numerators:
        frac = Fraction(num, p)
        if 0 < frac < 1:
            orbits.append(TraceClass(frac))
    return CentralRootClasses(p, sign, tuple(central), tuple(sorted(orbits)))


def central_root_spectrum(p: int, sign: int) -> ComponentSpectrum:
    """Component spectrum of {A : A^p = sign*I}: isolated centers at
    dimension 0, one 2-dimensional component per eigenvalue-pair orbit."""
    classes = central_root_classes(p, sign)
    return ComponentSpectrum({0: len(classes.central), 2: len(classes.orbits)})


def admissible_traces(p: int, sign: int) -> tuple[TraceClass, ...]:
    """All trace values occurring on the solution set of A^p = sign*I."""
    classes = central_root_classes(p, sign)
    central = []
    for eta in classes.central:
        central.append(TraceClass(Fraction(0 if eta == 1 else 1)))
    return tuple(sorted(central + list(classes.orbits)))


def classify_trace(value: complex, classes, tol: float) -> TraceClass | None:
    """Match a numeric trace against a finite set of classes.

    Returns the unique class within tol of value, or None.  Admissible
    traces are real, so the imaginary part counts toward the distance.
    """
    best = None
    best_err = tol
    for cls in classes:
        err = abs(complex(value) - cls.value)
        if err <= best_err:
            best = cls
            best_err = err
    return best


@dataclass(frozen=True)
class TracePolynomial:
    """Integer polynomial giving tr(A^p) as a function of t = tr(A).

    Satisfies poly(z + 1/z) == z^p + z^-p.  Recurrence: T_0 = 2,
    T_1 = t, T_{m+1} = t*T_m - T_{m-1}.  Coefficients are ascending.
    """

    power: int
    coefficients: tuple[int, ...]

    def __call__(self, t: complex) -> complex:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def trace_poly(p: int) -> TracePolynomial:
    """Trace polynomial of the p-th power map on SL2C, exact integers."""
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"power must be a nonnegative integer, got {p!r}")
    prev = [2]
    if p == 0:
        return TracePolynomial(0, (2,))
    cur = [0, 1]
    for _ in range(p - 1):
        shifted = [0] + cur
        nxt = [a - b for a, b in zip(shifted, prev + [0] * (len(shifted) - len(prev)))]
        prev, cur = cur, nxt
    return TracePolynomial(p, tuple(cur))
