"""Special Jordan algebra operations on complex square matrices.

The bilinear product is a o b = (ab + ba)/2.  The triple product
{a, b, c} is built from the bilinear one,

    {a, b, c} = (a o b) o c + (b o c) o a - (c o a) o b,

rather than from the associative shortcut (abc + cba)/2; the tests use
the shortcut as an independent oracle.  All inputs pass through the
validation in :mod:`jordan_trotter.linalg`.
"""
from __future__ import annotations

import numpy as np

from .linalg import as_matrix


def jordan_product(a, b) -> np.ndarray:
    """Symmetrized product (ab + ba)/2; commutative, non-associative."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    return (ma @ mb + mb @ ma) / 2.0


def triple_product(a, b, c) -> np.ndarray:
    """Jordan triple product {a, b, c} via the bilinear composition."""
    return (
        jordan_product(jordan_product(a, b), c)
        + jordan_product(jordan_product(b, c), a)
        - jordan_product(jordan_product(c, a), b)
    )


def u_op(a, c, b) -> np.ndarray:
    """Two-sided multiplication U_{a,c}(b) = {a, b, c}.

    With a == c this is the quadratic representation U_a(b), equal to
    a b a in the special realization.
    """
    return triple_product(a, b, c)


def m_op(a, b) -> np.ndarray:
    """Multiplication operator M_a applied to b, i.e. a o b."""
    return jordan_product(a, b)


def jordan_power(a, k: int) -> np.ndarray:
    """k-th power of a Jordan element.

    Powers of a single element associate, so this coincides with the
    associative matrix power and is computed that way.
    """
    m = as_matrix(a)
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"power must be a non-negative integer, got {k!r}")
    return np.linalg.matrix_power(m, int(k))


__all__ = [
    "jordan_product",
    "triple_product",
    "u_op",
    "m_op",
    "jordan_power",
]
