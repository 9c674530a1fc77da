"""Truncated Taylor-series arithmetic (forward-mode derivative propagation).

A :class:`Jet` holds the Taylor coefficients of a scalar function at a point,
``c[k] = f^(k)(t0) / k!``.  Arithmetic on jets propagates derivatives through
``+ - * / **``, ``exp``, ``log`` and ``sqrt``, so evaluating an expression on
``Jet.variable(t0)`` yields the expression's derivatives at ``t0``.

Jets expose derivatives up to third order.  Internally two extra orders are
retained so that derived functions (derivative shifts ``f -> f'`` and
reciprocals of second derivatives) still carry exact third-order jets.
"""

from __future__ import annotations

import math

import numpy as np

# Highest retained Taylor order.  Third-order output plus two orders of
# headroom for derivative shifts.
ORDER = 5


class DomainError(ValueError):
    """Evaluation outside the domain where a function is defined."""


def _lift(x) -> "Jet":
    if isinstance(x, Jet):
        return x
    return Jet.constant(float(x))


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = np.zeros(ORDER + 1)
        src = np.asarray(coeffs, dtype=float)
        k = min(src.shape[0], ORDER + 1)
        c[:k] = src[:k]
        self.c = c

    @classmethod
    def constant(cls, value: float) -> "Jet":
        j = cls.__new__(cls)
        c = np.zeros(ORDER + 1)
        c[0] = value
        j.c = c
        return j

    @classmethod
    def variable(cls, t0: float) -> "Jet":
        j = cls.__new__(cls)
        c = np.zeros(ORDER + 1)
        c[0] = t0
        c[1] = 1.0
        j.c = c
        return j

    @classmethod
    def _raw(cls, c: np.ndarray) -> "Jet":
        j = cls.__new__(cls)
        j.c = c
        return j

    # -- inspection ---------------------------------------------------------

    @property
    def value(self) -> float:
        return float(self.c[0])

    def derivative(self, k: int) -> float:
        """k-th derivative at the expansion point."""
        if not 0 <= k <= ORDER:
            raise ValueError(f"derivative order {k} outside jet order {ORDER}")
        return float(self.c[k]) * math.factorial(k)

    def jet4(self) -> tuple[float, float, float, float]:
        """(f, f', f'', f''') at the expansion point."""
        c = self.c
        return float(c[0]), float(c[1]), 2.0 * float(c[2]), 6.0 * float(c[3])

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "Jet":
        return Jet._raw(self.c + _lift(other).c)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet._raw(-self.c)

    def __sub__(self, other) -> "Jet":
        return Jet._raw(self.c - _lift(other).c)

    def __rsub__(self, other) -> "Jet":
        return Jet._raw(_lift(other).c - self.c)

    def __mul__(self, other) -> "Jet":
        b = _lift(other).c
        return Jet._raw(np.convolve(self.c, b)[: ORDER + 1])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        b = _lift(other).c
        if b[0] == 0.0:
            raise DomainError("division by zero")
        a = self.c
        q = np.zeros(ORDER + 1)
        for k in range(ORDER + 1):
            acc = a[k]
            for j in range(1, k + 1):
                acc -= b[j] * q[k - j]
            q[k] = acc / b[0]
        return Jet._raw(q)

    def __rtruediv__(self, other) -> "Jet":
        return _lift(other).__truediv__(self)

    def __pow__(self, p) -> "Jet":
        if isinstance(p, Jet):
            if np.any(p.c[1:] != 0.0):
                # genuinely variable exponent: b^e = exp(e * log b)
                return (p * self.log()).exp()
            p = p.value
        p = float(p)
        if p == round(p) and abs(p) <= 128:
            return self._int_pow(int(round(p)))
        # real exponent via exp/log; requires a positive base
        return (p * self.log()).exp()

    def __rpow__(self, other) -> "Jet":
        return _lift(other).__pow__(self)

    def _int_pow(self, k: int) -> "Jet":
        if k < 0:
            return Jet.constant(1.0) / self._int_pow(-k)
        out = Jet.constant(1.0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- elementary functions -----------------------------------------------

    def exp(self) -> "Jet":
        a = self.c
        e = np.zeros(ORDER + 1)
        try:
            e[0] = math.exp(a[0])
        except OverflowError:
            raise DomainError(
                f"exp overflows double precision at t={a[0]:.6g}"
            ) from None
        for k in range(1, ORDER + 1):
            acc = 0.0
            for j in range(1, k + 1):
                acc += j * a[j] * e[k - j]
            e[k] = acc / k
        return Jet._raw(e)

    def log(self) -> "Jet":
        a = self.c
        if a[0] <= 0.0:
            raise DomainError(f"log of non-positive value {a[0]:.6g}")
        l = np.zeros(ORDER + 1)
        l[0] = math.log(a[0])
        for k in range(1, ORDER + 1):
            acc = a[k]
            for j in range(1, k):
                acc -= (j / k) * l[j] * a[k - j]
            l[k] = acc / a[0]
        return Jet._raw(l)

    def sqrt(self) -> "Jet":
        a = self.c
        if a[0] <= 0.0:
            raise DomainError(f"sqrt of non-positive value {a[0]:.6g}")
        s = np.zeros(ORDER + 1)
        s[0] = math.sqrt(a[0])
        for k in range(1, ORDER + 1):
            acc = a[k]
            for j in range(1, k):
                acc -= s[j] * s[k - j]
            s[k] = acc / (2.0 * s[0])
        return Jet._raw(s)

    # -- calculus helpers -----------------------------------------------------

    def shift(self) -> "Jet":
        """Taylor series of the derivative (drops the top coefficient)."""
        b = np.zeros(ORDER + 1)
        for k in range(ORDER):
            b[k] = (k + 1) * self.c[k + 1]
        return Jet._raw(b)

    def compose_on(self, inner: "Jet") -> "Jet":
        """Series of f(g(t)), where self is f's series at g's value.

        ``self.c`` must be the Taylor coefficients of the outer function at
        ``inner.value``.  Standard truncated composition by Horner's rule.
        """
        d = inner.c.copy()
        d[0] = 0.0
        dev = Jet._raw(d)
        out = Jet.constant(float(self.c[ORDER]))
        for k in range(ORDER - 1, -1, -1):
            out = out * dev + float(self.c[k])
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Jet({self.c.tolist()})"
