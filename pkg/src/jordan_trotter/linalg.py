"""Dense complex matrix primitives shared by every other module.

Matrices are numpy arrays of shape (d, d) with complex128 entries.  The
matrix exponential is implemented here directly (diagonal Pade kernel of
order 13 with scaling and squaring) so the test suite can check it
against an independent eigendecomposition route; everything else defers
to LAPACK through numpy.
"""
from __future__ import annotations

from enum import Enum

import numpy as np


class NormKind(Enum):
    """Matrix norms used throughout: Frobenius and operator 2-norm."""

    FROBENIUS = "frobenius"
    OPERATOR2 = "operator"


def as_matrix(a) -> np.ndarray:
    """Coerce input to a square complex128 array, rejecting bad shapes.

    Raises
    ------
    ValueError
        If the input is not a finite square matrix.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix entries must be finite")
    return m


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return ma, mb


def mat_add(a, b) -> np.ndarray:
    """Entrywise sum of two equal-sized square matrices."""
    ma, mb = _pair(a, b)
    return ma + mb


def mat_mul(a, b) -> np.ndarray:
    """Associative matrix product of two equal-sized square matrices."""
    ma, mb = _pair(a, b)
    return ma @ mb


# [13/13] Pade coefficients and scaling threshold (Higham 2005).
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_THETA13 = 5.371920351148152


def mat_exp(a) -> np.ndarray:
    """Matrix exponential via order 13 diagonal Pade with scaling/squaring.

    Works for arbitrary complex square matrices; accuracy is set by the
    fixed Pade order together with a 1-norm based choice of the scaling
    power.
    """
    m = as_matrix(a)
    d = m.shape[0]
    nrm = np.linalg.norm(m, 1)
    s = 0
    if nrm > _THETA13:
        s = int(np.ceil(np.log2(nrm / _THETA13)))
    ms = m / (2.0**s)

    ident = np.eye(d, dtype=complex)
    b = _PADE13
    m2 = ms @ ms
    m4 = m2 @ m2
    m6 = m2 @ m4
    u = ms @ (
        m6 @ (b[13] * m6 + b[11] * m4 + b[9] * m2)
        + b[7] * m6
        + b[5] * m4
        + b[3] * m2
        + b[1] * ident
    )
    v = (
        m6 @ (b[12] * m6 + b[10] * m4 + b[8] * m2)
        + b[6] * m6
        + b[4] * m4
        + b[2] * m2
        + b[0] * ident
    )
    f = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        f = f @ f
    return f


def norm(a, kind: NormKind = NormKind.OPERATOR2) -> float:
    """Frobenius norm or operator 2-norm (largest singular value)."""
    m = as_matrix(a)
    if kind is NormKind.FROBENIUS:
        return float(np.linalg.norm(m))
    if kind is NormKind.OPERATOR2:
        return float(np.linalg.norm(m, 2))
    raise ValueError(f"unknown norm kind: {kind!r}")


def is_hermitian(a, tol: float = 1e-12) -> bool:
    """True when max|A - A*| <= tol * max(1, ||A||_F)."""
    m = as_matrix(a)
    scale = max(1.0, float(np.linalg.norm(m)))
    return bool(np.max(np.abs(m - m.conj().T)) <= tol * scale)
