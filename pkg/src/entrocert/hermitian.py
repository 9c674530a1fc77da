"""Hermitian matrices, spectral calculus and trace functionals.

Matrices are plain complex ndarrays kept *exactly* Hermitian: every
constructor here symmetrises, so ``m[j, i] == conj(m[i, j])`` holds bitwise.
The working dimension is small (n <= 8 per tensor factor); everything uses
dense eigendecompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import ScalarFunction
from .jets import DomainError

__all__ = [
    "hermitize",
    "is_hermitian",
    "SpectralDecomposition",
    "EighError",
    "eigh",
    "apply_function",
    "trace",
    "trace_of_function",
    "entropy",
    "PsdMargin",
    "psd_margin",
    "random_unitary",
    "random_hermitian",
    "random_pd",
    "matrix_to_json",
    "matrix_from_json",
]

MAX_DIM = 8  # per tensor factor; composites may be larger

# Residual bounds for the eigendecomposition, relative to max(1, scale).
EIGH_RESIDUAL_TOL = 1e-12

# Eigenvalues this far below zero (relative) still count as "zero" when the
# function declares a continuous extension at 0.
ZERO_CLAMP_TOL = 1e-12


def hermitize(a: np.ndarray) -> np.ndarray:
    """Hermitian part (a + a*) / 2; exact conjugate symmetry by construction."""
    a = np.asarray(a, dtype=complex)
    return (a + a.conj().T) / 2.0


def is_hermitian(a: np.ndarray) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and np.array_equal(a, a.conj().T)


class EighError(RuntimeError):
    """Eigendecomposition failed to converge or missed its residual bound."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and a unitary of eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eigh(m: np.ndarray) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix, with residual checks."""
    m = np.asarray(m, dtype=complex)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise EighError(f"eigendecomposition did not converge: {exc}") from exc
    scale = max(1.0, float(np.linalg.norm(m)))
    residual = float(np.linalg.norm((v * w) @ v.conj().T - m))
    if residual > EIGH_RESIDUAL_TOL * scale:
        raise EighError(
            f"eigendecomposition residual {residual:.3e} exceeds "
            f"{EIGH_RESIDUAL_TOL:g} * {scale:g}",
            residual=residual,
        )
    ortho = float(np.linalg.norm(v.conj().T @ v - np.eye(m.shape[0])))
    if ortho > EIGH_RESIDUAL_TOL * m.shape[0]:
        raise EighError(f"eigenvector matrix not unitary (defect {ortho:.3e})", residual=ortho)
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def _function_values(f: ScalarFunction, eigenvalues: np.ndarray) -> np.ndarray:
    """f applied to a spectrum, honouring the zero extension and domain.

    Eigenvalues within ZERO_CLAMP_TOL * max(1, scale) of zero are treated as
    exact zeros when the function has a zero extension.  Without the clamp,
    the numerically-zero spectrum of embeddings like W rho W^dagger would
    leak O(sqrt(eps)) errors through functions with unbounded slope at 0.
    """
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    clamp = ZERO_CLAMP_TOL * max(1.0, scale)
    out = np.empty(eigenvalues.shape[0])
    for i, lam in enumerate(eigenvalues):
        lam = float(lam)
        if f.zero_extension is not None and f.domain_min == 0.0 and abs(lam) <= clamp:
            out[i] = f.zero_extension
        elif lam > f.domain_min:
            out[i] = f(lam)
        else:
            raise DomainError(
                f"eigenvalue {lam:.6g} outside the domain of {f.name}"
            )
    return out


def apply_function(
    f: ScalarFunction, m: np.ndarray, decomp: SpectralDecomposition | None = None
) -> np.ndarray:
    """f(m) by spectral calculus; the result is exactly Hermitian."""
    dec = decomp if decomp is not None else eigh(m)
    vals = _function_values(f, dec.eigenvalues)
    v = dec.eigenvectors
    return hermitize((v * vals) @ v.conj().T)


def trace(m: np.ndarray) -> complex:
    return complex(np.trace(np.asarray(m)))


def trace_of_function(
    f: ScalarFunction, m: np.ndarray, decomp: SpectralDecomposition | None = None
) -> float:
    """Tr f(m) = sum of f over the spectrum."""
    dec = decomp if decomp is not None else eigh(m)
    return float(np.sum(_function_values(f, dec.eigenvalues)))


def entropy(f: ScalarFunction, m: np.ndarray) -> float:
    """S_f(m) = -Tr f(m)."""
    return -trace_of_function(f, m)


@dataclass(frozen=True)
class PsdMargin:
    """Signed distance of a Hermitian matrix from the PSD cone.

    ``scale`` is the spectral radius of the tested matrix; classification is
    relative to max(1, scale).
    """

    min_eigenvalue: float
    scale: float

    def is_psd(self, tol: float = 1e-10) -> bool:
        return self.min_eigenvalue >= -tol * max(1.0, self.scale)

    @property
    def normalized(self) -> float:
        return self.min_eigenvalue / max(1.0, self.scale)


def psd_margin(m: np.ndarray) -> PsdMargin:
    w = np.linalg.eigvalsh(np.asarray(m, dtype=complex))
    return PsdMargin(min_eigenvalue=float(w[0]), scale=float(np.max(np.abs(w))))


# --------------------------------------------------------------------------
# random generators (all take an explicit numpy Generator; no global state)

def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like unitary: QR of a complex Gaussian with phase correction."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitize(z)


def random_pd(
    dim: int, eig_range: tuple[float, float], rng: np.random.Generator
) -> np.ndarray:
    """Random positive definite matrix with log-uniform spectrum in eig_range."""
    lo, hi = float(eig_range[0]), float(eig_range[1])
    if not 0.0 < lo <= hi:
        raise ValueError(f"invalid eigenvalue range [{lo}, {hi}]")
    if lo == hi:
        lam = np.full(dim, lo)
    else:
        lam = np.exp(rng.uniform(math.log(lo), math.log(hi), size=dim))
        lam = np.clip(lam, lo, hi)
    u = random_unitary(dim, rng)
    return hermitize((u * lam) @ u.conj().T)


# --------------------------------------------------------------------------
# JSON round trip

def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    n = int(obj["dim"])
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValueError(f"matrix JSON shape mismatch for dim {n}")
    # Hermitian symmetry is an invariant, not an assumption about the file
    return hermitize(re + 1j * im)
