"""Census of A^p = +-I and trace polynomial checks.

The census oracle below enumerates the candidate eigenvalues as
explicit roots of unity and folds reciprocal pairs, sharing no code
with the parity arithmetic in the package.
"""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from sl2rep.matrices import mat_power, random_sl2
from sl2rep.traces import (
    ComponentSpectrum,
    TraceClass,
    admissible_traces,
    central_root_classes,
    central_root_spectrum,
    classify_trace,
    trace_poly,
)


def unit_root_census(p, sign):
    """(central count, orbit traces) for z^p = sign by direct enumeration."""
    sols = []
    for j in range(2 * p):
        z = cmath.exp(1j * math.pi * j / p)
        if abs(z ** p - sign) < 1e-9:
            sols.append(z)
    central = sum(1 for z in sols if min(abs(z - 1), abs(z + 1)) < 1e-9)
    # z and 1/z share the trace z + 1/z, which is injective on pairs
    traces = sorted(
        {round((z + 1 / z).real, 9) for z in sols if min(abs(z - 1), abs(z + 1)) >= 1e-9},
        reverse=True,
    )
    return central, traces


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("p", range(2, 32))
def test_census_matches_unit_root_enumeration(p, sign):
    classes = central_root_classes(p, sign)
    n_central, traces = unit_root_census(p, sign)
    assert len(classes.central) == n_central
    assert len(classes.orbits) == len(traces)
    got = sorted((c.value for c in classes.orbits), reverse=True)
    assert got == pytest.approx(traces, abs=1e-9)


def test_orbit_count_closed_forms():
    for p in range(2, 32):
        plus = len(central_root_classes(p, 1).orbits)
        minus = len(central_root_classes(p, -1).orbits)
        if p % 2 == 1:
            assert plus == (p - 1) // 2
            assert minus == (p - 1) // 2
        else:
            assert plus == (p - 2) // 2
            assert minus == p // 2


def test_central_membership_by_parity():
    assert central_root_classes(5, 1).central == (1,)
    assert central_root_classes(6, 1).central == (1, -1)
    assert central_root_classes(5, -1).central == (-1,)
    assert central_root_classes(6, -1).central == ()


def test_small_orbit_angles():
    assert [c.angle for c in central_root_classes(5, 1).orbits] == [
        Fraction(2, 5),
        Fraction(4, 5),
    ]
    assert [c.angle for c in central_root_classes(6, -1).orbits] == [
        Fraction(1, 6),
        Fraction(1, 2),
        Fraction(5, 6),
    ]
    assert central_root_classes(2, 1).orbits == ()
    assert [c.angle for c in central_root_classes(2, -1).orbits] == [Fraction(1, 2)]


def test_census_input_validation():
    with pytest.raises(ValueError):
        central_root_classes(1, 1)
    with pytest.raises(ValueError):
        central_root_classes(5, 0)


def test_trace_class_values_and_labels():
    assert TraceClass(Fraction(0)).value == pytest.approx(2.0)
    assert TraceClass(Fraction(1)).value == pytest.approx(-2.0)
    assert TraceClass(Fraction(1, 3)).value == pytest.approx(1.0)
    assert TraceClass(Fraction(0)).label() == "+2"
    assert TraceClass(Fraction(1)).label() == "-2"
    assert TraceClass(Fraction(2, 5)).label() == "2cos(2pi/5)"
    assert TraceClass(Fraction(0)).central and TraceClass(Fraction(1)).central
    assert not TraceClass(Fraction(1, 2)).central
    with pytest.raises(ValueError):
        TraceClass(Fraction(3, 2))


def test_admissible_traces_are_sorted_and_complete():
    traces = admissible_traces(6, 1)
    # centrals +-2 plus the two orbit classes
    assert len(traces) == 4
    assert traces == tuple(sorted(traces))
    values = [t.value for t in traces]
    assert values == sorted(values, reverse=True)


def test_classify_trace():
    classes = admissible_traces(5, 1)
    exact = 2 * math.cos(2 * math.pi / 5)
    hit = classify_trace(exact, classes, 1e-6)
    assert hit is not None and hit.angle == Fraction(2, 5)
    assert classify_trace(exact + 1e-8, classes, 1e-6) == hit
    assert classify_trace(exact + 1e-3, classes, 1e-6) is None
    # imaginary offsets count toward the distance
    assert classify_trace(exact + 1e-3j, classes, 1e-6) is None
    assert classify_trace(0.0, classes, 1e-6) is None


def test_component_spectrum_bookkeeping():
    spec = ComponentSpectrum({2: 3, 0: 1, 4: 0})
    assert spec.entries == {0: 1, 2: 3}
    assert spec.dimension() == 2
    assert spec.count(2) == 3 and spec.count(6) == 0
    assert spec.total() == 4
    with pytest.raises(ValueError):
        ComponentSpectrum({-1: 2})
    with pytest.raises(ValueError):
        ComponentSpectrum({}).dimension()


def test_central_root_spectrum_examples():
    assert central_root_spectrum(5, 1).entries == {0: 1, 2: 2}
    assert central_root_spectrum(2, 1).entries == {0: 2}
    assert central_root_spectrum(2, -1).entries == {2: 1}
    assert central_root_spectrum(6, -1).entries == {2: 3}


@pytest.mark.parametrize(
    "p,coeffs",
    [
        (0, (2,)),
        (1, (0, 1)),
        (2, (-2, 0, 1)),
        (3, (0, -3, 0, 1)),
        (4, (2, 0, -4, 0, 1)),
        (5, (0, 5, 0, -5, 0, 1)),
    ],
)
def test_trace_poly_small_tables(p, coeffs):
    poly = trace_poly(p)
    assert poly.coefficients == coeffs
    assert poly.degree == p


def test_trace_poly_monic_with_integer_coefficients():
    for p in range(1, 16):
        poly = trace_poly(p)
        assert poly.coefficients[-1] == 1
        assert all(isinstance(c, int) for c in poly.coefficients)


def test_trace_poly_satisfies_power_sum_identity():
    rng = np.random.default_rng(7)
    for p in range(13):
        poly = trace_poly(p)
        for _ in range(5):
            z = complex(rng.standard_normal(), rng.standard_normal())
            if abs(z) < 0.2:
                z += 1.0
            expected = z ** p + z ** (-p)
            assert poly(z + 1 / z) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_trace_poly_matches_matrix_power_traces():
    rng = np.random.default_rng(11)
    for p in range(9):
        poly = trace_poly(p)
        for _ in range(4):
            m = random_sl2(rng)
            expected = complex(np.trace(mat_power(m, p)))
            assert poly(complex(np.trace(m))) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_trace_poly_rejects_negative_power():
    with pytest.raises(ValueError):
        trace_poly(-1)
