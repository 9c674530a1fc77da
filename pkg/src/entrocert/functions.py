"""Scalar trace-function candidates with third-order derivative jets.

All functions live on the open half line (0, inf).  A function may declare a
continuous extension at 0 (``zero_extension``), which the matrix layer uses
for positive semidefinite arguments; without one, singular matrices are
rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .jets import ORDER, DomainError, Jet

__all__ = [
    "ScalarFunction",
    "DomainError",
    "DegenerateFunctionError",
    "registry",
    "lookup",
    "compose",
    "divided_difference",
    "divided_difference_quadrature_check",
    "gap_function",
]

# Relative eigenvalue gap below which divided differences switch to the
# midpoint-derivative rule.
DIVIDED_DIFFERENCE_GAP = 1e-6

# |f''| below this is treated as identically zero when forming 1/f''.
DEGENERACY_FLOOR = 1e-12


class DegenerateFunctionError(ValueError):
    """1/f'' requested for a function whose f'' vanishes."""


@dataclass(frozen=True)
class ScalarFunction:
    """A scalar function of t > 0 together with its derivative jets.

    ``taylor`` maps a point t > domain_min to the function's Taylor series
    there (a :class:`Jet`).  ``expression`` is set when the function came from
    the expression parser, so it can be reconstructed from a JSON dump.
    """

    name: str
    taylor: Callable[[float], Jet] = field(compare=False)
    zero_extension: Optional[float] = None
    domain_min: float = 0.0
    expression: Optional[str] = None

    def _series(self, t: float) -> Jet:
        t = float(t)
        if not t > self.domain_min:
            raise DomainError(
                f"{self.name} evaluated at t={t:.6g}, outside its domain "
                f"(t > {self.domain_min:g})"
            )
        return self.taylor(t)

    def jet(self, t: float) -> tuple[float, float, float, float]:
        """(f, f', f'', f''') at t."""
        return self._series(t).jet4()

    def __call__(self, t: float) -> float:
        t = float(t)
        if t == self.domain_min and self.zero_extension is not None:
            return self.zero_extension
        return self._series(t).value

    def d1(self, t: float) -> float:
        return self._series(t).derivative(1)

    def d2(self, t: float) -> float:
        return self._series(t).derivative(2)

    def d3(self, t: float) -> float:
        return self._series(t).derivative(3)

    def derivative(self) -> "ScalarFunction":
        """The derivative as a function in its own right.

        Exact through third order for registry/parsed functions (the extra
        internal series order pays for the shift).  No zero extension is
        assumed for f'.
        """
        base = self.taylor
        return ScalarFunction(
            name=f"d({self.name})",
            taylor=lambda t: base(t).shift(),
            zero_extension=None,
            domain_min=self.domain_min,
        )

    def describe(self) -> dict:
        """JSON-ready descriptor sufficient to reconstruct the function."""
        return {
            "name": self.name,
            "expression": self.expression,
            "zero_extension": self.zero_extension,
        }


# --------------------------------------------------------------------------
# registry

def _tlogt(t: float) -> Jet:
    x = Jet.variable(t)
    return x * x.log()


def _neglog(t: float) -> Jet:
    return -Jet.variable(t).log()


def _square(t: float) -> Jet:
    x = Jet.variable(t)
    return x * x


def _power(p: float) -> Callable[[float], Jet]:
    def series(t: float) -> Jet:
        return Jet.variable(t) ** p

    return series


def _affine(t: float) -> Jet:
    return 2.0 * Jet.variable(t) + 1.0


def _exp(t: float) -> Jet:
    return Jet.variable(t).exp()


def _negsqrt(t: float) -> Jet:
    return -Jet.variable(t).sqrt()


_REGISTRY: tuple[ScalarFunction, ...] = (
    ScalarFunction("tlogt", _tlogt, zero_extension=0.0),
    ScalarFunction("neglog", _neglog, zero_extension=None),
    ScalarFunction("square", _square, zero_extension=0.0),
    ScalarFunction("power:1.25", _power(1.25), zero_extension=0.0),
    ScalarFunction("power:1.5", _power(1.5), zero_extension=0.0),
    ScalarFunction("power:1.75", _power(1.75), zero_extension=0.0),
    ScalarFunction("affine", _affine, zero_extension=1.0),
    ScalarFunction("exp", _exp, zero_extension=1.0),
    ScalarFunction("negsqrt", _negsqrt, zero_extension=0.0),
)


def registry() -> tuple[ScalarFunction, ...]:
    """The built-in candidate functions."""
    return _REGISTRY


def lookup(name: str) -> ScalarFunction:
    for f in _REGISTRY:
        if f.name == name:
            return f
    known = ", ".join(f.name for f in _REGISTRY)
    raise KeyError(f"unknown function {name!r} (known: {known})")


def compose(outer: ScalarFunction, inner: ScalarFunction, name: str | None = None) -> ScalarFunction:
    """outer(inner(t)), with jets propagated through the composition."""

    def series(t: float) -> Jet:
        g = inner.taylor(t)
        fs = outer._series(g.value)
        return fs.compose_on(g)

    return ScalarFunction(
        name=name or f"{outer.name}({inner.name})",
        taylor=series,
        zero_extension=None,
        domain_min=inner.domain_min,
    )


# --------------------------------------------------------------------------
# divided differences

def divided_difference(f: ScalarFunction, t: float, s: float) -> float:
    """First divided difference (f(t) - f(s)) / (t - s).

    Coincident or nearly coincident arguments (relative gap below 1e-6)
    use f'((t+s)/2), which is second-order accurate in the gap.  The result
    is exactly symmetric in (t, s).
    """
    t = float(t)
    s = float(s)
    if abs(t - s) > DIVIDED_DIFFERENCE_GAP * max(abs(t), abs(s), 1.0):
        return (f(t) - f(s)) / (t - s)
    return f.d1(0.5 * (t + s))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
# map from [-1, 1] to [0, 1]
_GL_X = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


def divided_difference_quadrature_check(f: ScalarFunction, t: float, s: float) -> float:
    """Independent quadrature route: integral of f'(x t + (1-x) s) over [0, 1].

    32-node Gauss-Legendre.  Used only as a test oracle for
    :func:`divided_difference`; never on the production path.
    """
    t = float(t)
    s = float(s)
    total = 0.0
    for x, w in zip(_GL_X, _GL_W):
        total += w * f.d1(x * t + (1.0 - x) * s)
    return total


# --------------------------------------------------------------------------
# gap function

_GAP_CHECK_GRID = np.logspace(-2.0, 2.0, 25)


def gap_function(f: ScalarFunction) -> ScalarFunction:
    """g = 1 / f'', the reciprocal curvature of f.

    Raises :class:`DegenerateFunctionError` when f'' vanishes somewhere on a
    sampling grid (affine or degenerate candidates have no gap function).
    The returned jets are exact through third order: they come from the
    reciprocal of f's second-derivative series, which the extra internal
    series order keeps exact.
    """
    for t in _GAP_CHECK_GRID:
        if abs(f.d2(float(t))) < DEGENERACY_FLOOR:
            raise DegenerateFunctionError(
                f"{f.name} is affine or degenerate near t={t:.3g} "
                f"(|f''| < {DEGENERACY_FLOOR:g}); gap function undefined"
            )

    base = f.taylor

    def series(t: float) -> Jet:
        spp = base(t).shift().shift()
        if abs(spp.value) < DEGENERACY_FLOOR:
            raise DegenerateFunctionError(
                f"{f.name} is affine or degenerate at t={t:.6g}; "
                "gap function undefined"
            )
        return Jet.constant(1.0) / spp

    return ScalarFunction(
        name=f"gap({f.name})",
        taylor=series,
        zero_extension=None,
        domain_min=f.domain_min,
    )
