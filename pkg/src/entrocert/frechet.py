"""Frechet differentials of matrix functions and their superoperator form.

In the eigenbasis of rho, the differential of the spectral calculus
``rho -> f(rho)`` acts entrywise: the perturbation is multiplied by the
matrix of first divided differences of f over the spectrum (the Loewner
matrix, whose diagonal is f').  Materialising that linear map over a fixed
basis of matrix units gives an n^2 x n^2 matrix on which operator
inequalities between different base points can be tested directly.

Vectorisation convention: column stacking, i.e. ``vec(m)[i + n*j] = m[i, j]``,
with matrix units E_ij ordered j-major to match.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import (
    DIVIDED_DIFFERENCE_GAP,
    ScalarFunction,
    divided_difference,
)
from .hermitian import (
    PsdMargin,
    SpectralDecomposition,
    eigh,
    hermitize,
    is_hermitian,
)

__all__ = [
    "NotInvertibleError",
    "vec",
    "unvec",
    "matrix_unit",
    "loewner_matrix",
    "frechet_diff",
    "Superoperator",
    "frechet_superoperator",
    "frechet_inverse",
    "second_diff_G",
]

# Loewner entries at or below this are not safely invertible.
INVERTIBILITY_FLOOR = 1e-12


class NotInvertibleError(ValueError):
    """The differential is not invertible as a positive operator."""


def vec(m: np.ndarray) -> np.ndarray:
    """Column-stacking vectorisation."""
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int | None = None) -> np.ndarray:
    v = np.asarray(v)
    if dim is None:
        dim = round(v.shape[0] ** 0.5)
    return v.reshape((dim, dim), order="F")


def matrix_unit(dim: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((dim, dim), dtype=complex)
    e[i, j] = 1.0
    return e


def loewner_matrix(f: ScalarFunction, eigenvalues: np.ndarray) -> np.ndarray:
    """Matrix of first divided differences of f over a spectrum.

    Real symmetric; diagonal entries are f'(lambda_i).  Agrees entry by entry
    with :func:`entrocert.functions.divided_difference`.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    n = lam.shape[0]
    vals = [f(t) for t in lam]
    out = np.empty((n, n))
    for i in range(n):
        out[i, i] = f.d1(lam[i])
    for i in range(n):
        for j in range(i + 1, n):
            t, s = lam[i], lam[j]
            if abs(t - s) > DIVIDED_DIFFERENCE_GAP * max(abs(t), abs(s), 1.0):
                k = (vals[i] - vals[j]) / (t - s)
            else:
                k = f.d1(0.5 * (t + s))
            out[i, j] = k
            out[j, i] = k
    return out


def _hadamard_conjugate(kernel: np.ndarray, dec: SpectralDecomposition, h: np.ndarray) -> np.ndarray:
    u = dec.eigenvectors
    return u @ (kernel * (u.conj().T @ h @ u)) @ u.conj().T


def frechet_diff(
    f: ScalarFunction,
    rho: np.ndarray,
    h: np.ndarray,
    decomp: SpectralDecomposition | None = None,
) -> np.ndarray:
    """Directional derivative of rho -> f(rho) at rho in direction h.

    Linear in h; maps Hermitian h to (exactly) Hermitian output.  General
    square h is accepted as well, in which case no symmetrisation happens.
    """
    dec = decomp if decomp is not None else eigh(rho)
    kernel = loewner_matrix(f, dec.eigenvalues)
    out = _hadamard_conjugate(kernel, dec, np.asarray(h, dtype=complex))
    if is_hermitian(h):
        return hermitize(out)
    return out


@dataclass(frozen=True)
class Superoperator:
    """A linear map on n x n matrices, materialised over matrix units."""

    dim: int
    matrix: np.ndarray  # (dim^2, dim^2), complex

    def apply(self, h: np.ndarray) -> np.ndarray:
        return unvec(self.matrix @ vec(h), self.dim)

    def quadratic_form(self, h: np.ndarray) -> float:
        """<h, S h> in the Hilbert-Schmidt inner product (real part)."""
        v = vec(h)
        return float(np.real(v.conj() @ (self.matrix @ v)))

    def psd_margin(self) -> PsdMargin:
        w = np.linalg.eigvalsh(hermitize(self.matrix))
        return PsdMargin(min_eigenvalue=float(w[0]), scale=float(np.max(np.abs(w))))

    def __add__(self, other: "Superoperator") -> "Superoperator":
        self._check(other)
        return Superoperator(self.dim, self.matrix + other.matrix)

    def __sub__(self, other: "Superoperator") -> "Superoperator":
        self._check(other)
        return Superoperator(self.dim, self.matrix - other.matrix)

    def _check(self, other: "Superoperator"):
        if self.dim != other.dim:
            raise ValueError(f"superoperator dimension mismatch: {self.dim} vs {other.dim}")


def _materialise(kernel: np.ndarray, dec: SpectralDecomposition) -> Superoperator:
    n = dec.dim
    s = np.empty((n * n, n * n), dtype=complex)
    for j in range(n):
        for i in range(n):
            col = i + n * j
            s[:, col] = vec(_hadamard_conjugate(kernel, dec, matrix_unit(n, i, j)))
    return Superoperator(dim=n, matrix=s)


def frechet_superoperator(f: ScalarFunction, rho: np.ndarray) -> Superoperator:
    """The differential of f at rho as an n^2 x n^2 matrix.

    Hermiticity-preserving; its eigenvalues are exactly the multiset of
    Loewner-matrix entries, so it is positive definite whenever the divided
    differences of f are strictly positive.
    """
    dec = eigh(rho)
    return _materialise(loewner_matrix(f, dec.eigenvalues), dec)


def frechet_inverse(f: ScalarFunction, rho: np.ndarray) -> Superoperator:
    """Inverse of the differential of f at rho (entrywise reciprocal kernel)."""
    dec = eigh(rho)
    kernel = loewner_matrix(f, dec.eigenvalues)
    if float(np.min(kernel)) <= INVERTIBILITY_FLOOR:
        raise NotInvertibleError(
            f"differential of {f.name} is not invertible as a positive operator: "
            f"smallest divided difference {float(np.min(kernel)):.3e} <= {INVERTIBILITY_FLOOR:g}"
        )
    return _materialise(1.0 / kernel, dec)


def _second_diff_terms(
    f: ScalarFunction, rhos: list[np.ndarray], hs: list[np.ndarray]
) -> tuple[list[float], float]:
    if len(rhos) != len(hs) or not rhos:
        raise ValueError("second_diff_G needs equally many base points and directions")
    dim = rhos[0].shape[0]
    for m in (*rhos, *hs):
        if m.shape != (dim, dim):
            raise ValueError("second_diff_G arguments must share one dimension")
    fp = f.derivative()
    single = [
        float(np.trace(h @ frechet_diff(fp, r, h)).real) for r, h in zip(rhos, hs)
    ]
    h_tot = sum(hs)
    r_tot = sum(rhos)
    joint = float(np.trace(h_tot @ frechet_diff(fp, r_tot, h_tot)).real)
    return single, joint


def second_diff_G(f: ScalarFunction, rhos: list[np.ndarray], hs: list[np.ndarray]) -> float:
    """Second differential of G(rho_1..rho_k) = sum Tr f(rho_i) - Tr f(sum rho_i).

    Returns ``sum_i Tr h_i df'(rho_i) h_i  -  Tr (sum h_i) df'(sum rho_i) (sum h_i)``,
    the quadratic form whose nonnegativity for all Hermitian directions is
    midpoint convexity of G to second order.  For k=1 this is exactly 0.
    """
    single, joint = _second_diff_terms(f, list(rhos), list(hs))
    return float(sum(single) - joint)
