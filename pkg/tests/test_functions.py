import math

import numpy as np
import pytest

from entrocert.functions import (
    DegenerateFunctionError,
    ScalarFunction,
    divided_difference,
    divided_difference_quadrature_check,
    gap_function,
    lookup,
    registry,
)
from entrocert.jets import DomainError, Jet

EXPECTED_NAMES = {
    "tlogt",
    "neglog",
    "square",
    "power:1.25",
    "power:1.5",
    "power:1.75",
    "affine",
    "exp",
    "negsqrt",
}


def test_registry_contents():
    names = {f.name for f in registry()}
    assert names == EXPECTED_NAMES


def test_lookup_unknown():
    with pytest.raises(KeyError, match="unknown function"):
        lookup("cube")


# analytic derivative triples (f, f', f'', f''') for spot checks
ANALYTIC = {
    "tlogt": lambda t: (
        t * math.log(t),
        math.log(t) + 1.0,
        1.0 / t,
        -1.0 / t**2,
    ),
    "neglog": lambda t: (-math.log(t), -1.0 / t, 1.0 / t**2, -2.0 / t**3),
    "square": lambda t: (t * t, 2 * t, 2.0, 0.0),
    "power:1.5": lambda t: (
        t**1.5,
        1.5 * t**0.5,
        0.75 * t**-0.5,
        -0.375 * t**-1.5,
    ),
    "affine": lambda t: (2 * t + 1.0, 2.0, 0.0, 0.0),
    "exp": lambda t: (math.exp(t),) * 4,
    "negsqrt": lambda t: (
        -math.sqrt(t),
        -0.5 * t**-0.5,
        0.25 * t**-1.5,
        -0.375 * t**-2.5,
    ),
}


@pytest.mark.parametrize("name", sorted(ANALYTIC))
@pytest.mark.parametrize("t", [0.2, 1.0, 3.7])
def test_jets_against_analytic_derivatives(name, t):
    f = lookup(name)
    got = f.jet(t)
    want = ANALYTIC[name](t)
    for g, w in zip(got, want):
        assert g == pytest.approx(w, rel=1e-12, abs=1e-12)


def test_zero_extension_and_domain():
    tlogt = lookup("tlogt")
    assert tlogt(0.0) == 0.0
    neglog = lookup("neglog")
    with pytest.raises(DomainError):
        neglog(0.0)
    with pytest.raises(DomainError):
        tlogt(-0.5)
    assert lookup("exp")(0.0) == 1.0


def test_derivative_shifts_orders():
    f = lookup("tlogt")
    fp = f.derivative()
    t = 2.3
    assert fp(t) == pytest.approx(math.log(t) + 1.0, rel=1e-13)
    assert fp.d1(t) == pytest.approx(1.0 / t, rel=1e-13)
    assert fp.d2(t) == pytest.approx(-1.0 / t**2, rel=1e-13)
    # f' of f' keeps going
    fpp = fp.derivative()
    assert fpp(t) == pytest.approx(1.0 / t, rel=1e-13)


def test_describe_round_trip_fields():
    f = lookup("neglog")
    d = f.describe()
    assert d == {"name": "neglog", "expression": None, "zero_extension": None}


def test_divided_difference_symmetric_and_diagonal():
    f = lookup("tlogt")
    assert divided_difference(f, 2.0, 5.0) == divided_difference(f, 5.0, 2.0)
    # coincident arguments give the derivative
    assert divided_difference(f, 3.0, 3.0) == pytest.approx(
        math.log(3.0) + 1.0, rel=1e-13
    )
    # independent quadrature oracle over assorted gaps, including tiny ones
    for name in ("tlogt", "neglog", "power:1.5", "exp"):
        g = lookup(name)
        for (t, s) in [(0.5, 4.0), (1.0, 1.0 + 1e-9), (2.0, 2.00001), (0.1, 0.11)]:
            dd = divided_difference(g, t, s)
            ref = divided_difference_quadrature_check(g, t, s)
            assert dd == pytest.approx(ref, rel=5e-9, abs=1e-12)


def test_gap_function_closed_forms():
    cases = {
        "tlogt": lambda t: t,
        "neglog": lambda t: t * t,
        "square": lambda t: 0.5,
        "negsqrt": lambda t: 4.0 * t**1.5,
        "power:1.5": lambda t: t**0.5 / 0.75,
    }
    for name, ref in cases.items():
        g = gap_function(lookup(name))
        for t in (0.05, 1.0, 17.0):
            assert g(t) == pytest.approx(ref(t), rel=1e-12)


def test_gap_function_degenerate():
    with pytest.raises(DegenerateFunctionError):
        gap_function(lookup("affine"))


def test_custom_function_via_dataclass():
    f = ScalarFunction("cosh-ish", lambda t: (Jet.variable(t).exp() + (-Jet.variable(t)).exp()) / 2.0)
    assert f(1.0) == pytest.approx(math.cosh(1.0), rel=1e-13)
    assert f.d2(1.0) == pytest.approx(math.cosh(1.0), rel=1e-12)


def test_gap_of_gap_is_function():
    g = gap_function(lookup("neglog"))  # t^2
    gg = gap_function(g)  # 1/g'' = 1/2
    assert gg(3.0) == pytest.approx(0.5, rel=1e-12)
