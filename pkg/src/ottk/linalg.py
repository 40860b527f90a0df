"""Dense symmetric eigensolvers and the scalar affine least-squares fit.

Thin deterministic layer over LAPACK: eigenvalues come back sorted
descending and eigenvector signs follow a fixed first-nonzero-positive
convention so repeated runs and golden tests agree bit-for-bit.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular


def _check_symmetric(a, name="matrix"):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square")
    scale = max(np.max(np.abs(a)), 1e-300)
    if np.max(np.abs(a - a.T)) > 1e-12 * scale:
        raise ValueError(f"{name} must be symmetric")
    return 0.5 * (a + a.T)


def _fix_signs(vectors):
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        nz = np.flatnonzero(np.abs(col) > 1e-12 * max(np.max(np.abs(col)), 1e-300))
        if nz.size and col[nz[0]] < 0:
            out[:, k] = -col
    return out


def sym_eig(a):
    """Eigendecomposition of a symmetric matrix.

    Returns (eigenvalues descending, eigenvectors as columns), with the
    deterministic sign convention applied.
    """
    a = _check_symmetric(a)
    vals, vecs = np.linalg.eigh(a)
    order = np.argsort(vals)[::-1]
    return vals[order], _fix_signs(vecs[:, order])


def gen_eig(s, b):
    """Solve s v = lambda b v for symmetric s and positive-definite b.

    Whitens with the Cholesky factor of b, so the returned eigenvectors are
    b-orthonormal and sorted by descending eigenvalue.
    """
    s = _check_symmetric(s, "s")
    b = _check_symmetric(b, "b")
    try:
        chol = np.linalg.cholesky(b)
    except np.linalg.LinAlgError as exc:
        raise ValueError("b must be positive definite") from exc
    inner = solve_triangular(chol, s.T, lower=True).T
    whitened = solve_triangular(chol, inner, lower=True)
    vals, w = sym_eig(0.5 * (whitened + whitened.T))
    vecs = solve_triangular(chol.T, w, lower=False)
    return vals, _fix_signs(vecs)


def lstsq_affine(x, y):
    """Closed-form (a, b) minimizing ||a*x + b - y||**2."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size or x.size < 2:
        raise ValueError("x and y must be equally sized with at least 2 samples")
    xm, ym = x.mean(), y.mean()
    var = np.mean((x - xm) ** 2)
    if var <= 1e-15 * max(np.mean(x**2), 1.0):
        raise ValueError("degenerate template")
    a = float(np.mean((x - xm) * (y - ym)) / var)
    return a, float(ym - a * xm)
