"""Dense complex matrix arithmetic at small dimension.

Matrices are plain numpy arrays of dtype complex128.  This module supplies
the spectral norm, unitarity diagnostics, and Haar-distributed unitary
sampling that the realization layers build on.  Everything is pure;
randomness enters only through explicit integer seeds.
"""

from __future__ import annotations

import numpy as np

__all__ = ["as_matrix", "spectral_norm", "haar_unitary", "unitarity_residual"]


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex128 array.

    Raises ValueError if the input is not 2-dimensional or contains
    NaN/Inf entries.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def spectral_norm(m) -> float:
    """Largest singular value of ``m``.

    Computed by full SVD; at the dimensions used here (well under 200)
    exactness wins over speed.
    """
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def haar_unitary(n: int, seed: int) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary, deterministic in ``seed``.

    Draws a complex Ginibre matrix, takes its QR factorization, and
    absorbs the phases of R's diagonal into Q so the distribution is
    exactly Haar rather than merely unitary.
    """
    if n < 1:
        raise ValueError(f"unitary size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def unitarity_residual(u) -> float:
    """``max(||U*U - I||, ||UU* - I||)`` in spectral norm.

    Zero exactly when U is unitary; the input must be square.
    """
    a = as_matrix(u, "U")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"U must be square, got shape {a.shape}")
    eye = np.eye(a.shape[0])
    return max(
        spectral_norm(a.conj().T @ a - eye),
        spectral_norm(a @ a.conj().T - eye),
    )
