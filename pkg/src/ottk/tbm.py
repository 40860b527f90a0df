"""Transport-based morphometry: statistics in transform space.

PCA of transformed datasets yields transport modes of variation; penalized
LDA (a generalized eigenproblem against the within-class covariance plus a
ridge) yields discriminating modes, interpolating between plain LDA (small
ridge) and PCA (large ridge).  Modes are visualized by moving along the line
mean + alpha*mode and inverting each point; points that leave the
transform's range (lose monotonicity) are flagged instead of clipped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import gen_eig, sym_eig


@dataclass(frozen=True)
class TbmModel:
    """Transform-space mean, orthonormal modes (columns), eigenvalues, kind tag."""

    mean: np.ndarray
    modes: np.ndarray
    eigenvalues: np.ndarray
    kind: str
    gamma: float | None = None


def _as_matrix(dataset):
    X = np.asarray(dataset, dtype=float)
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError("dataset must be a (n_samples, dim) matrix")
    return X


def tbm_pca(dataset, n_modes: int) -> TbmModel:
    """Top principal modes of a transformed dataset.

    Goes through the Gram matrix when the ambient dimension exceeds the
    sample count.  Requires n_modes < n_samples; degenerate directions
    (zero variance) are dropped.
    """
    X = _as_matrix(dataset)
    n, d = X.shape
    if n < 2:
        raise ValueError("need at least two samples")
    if n_modes >= n:
        raise ValueError("n_modes must be smaller than the sample count")
    mean = X.mean(axis=0)
    C = X - mean
    if d > n:
        vals, u = sym_eig(C @ C.T / n)
        keep = vals > 1e-12 * max(vals[0], 1e-300)
        vals = vals[keep]
        modes = C.T @ u[:, keep] / np.sqrt(n * vals)
    else:
        vals, modes = sym_eig(C.T @ C / n)
        keep = vals > 1e-12 * max(vals[0] if vals.size else 0.0, 1e-300)
        vals, modes = vals[keep], modes[:, keep]
    k = min(n_modes, vals.size)
    return TbmModel(mean, modes[:, :k], vals[:k], kind="pca")


def _within_class_scatter(X, y):
    sw = np.zeros((X.shape[1], X.shape[1]))
    for c in set(y.tolist()):
        rows = X[y == c]
        centered = rows - rows.mean(axis=0)
        sw += centered.T @ centered / rows.shape[0]
    return sw


def tbm_plda(dataset, labels, gamma: float, n_modes: int) -> TbmModel:
    """Penalized-LDA modes: solve S v = lambda (S_W + gamma I) v.

    S is the total covariance and S_W the sum of the per-class covariance
    matrices.  Modes are returned with unit Euclidean norm, by descending
    eigenvalue.
    """
    X = _as_matrix(dataset)
    y = np.asarray(labels)
    if y.size != X.shape[0]:
        raise ValueError("need one label per sample row")
    if len(set(y.tolist())) < 2:
        raise ValueError("need at least two classes")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if n_modes >= X.shape[0]:
        raise ValueError("n_modes must be smaller than the sample count")
    mean = X.mean(axis=0)
    C = X - mean
    S = C.T @ C / X.shape[0]
    B = _within_class_scatter(X, y) + gamma * np.eye(X.shape[1])
    vals, vecs = gen_eig(S, B)
    k = min(n_modes, vals.size)
    modes = vecs[:, :k]
    modes = modes / np.linalg.norm(modes, axis=0)
    return TbmModel(mean, modes, vals[:k], kind="plda", gamma=gamma)


@dataclass(frozen=True)
class ModeSample:
    """One point of a mode sweep: flagged instead of reconstructed when the
    line leaves the transform's range."""

    alpha: float
    in_range: bool
    signal: object | None


def visualize_mode(model: TbmModel, mode_index: int, alphas, invert, range_check=None):
    """Invert mean + alpha*mode for each alpha.

    ``invert`` maps a transform-space vector back to a signal or image;
    ``range_check`` (default: nondecreasing vector) decides whether a point
    still lies in the transform's range.  Out-of-range points are returned
    flagged with no reconstruction.
    """
    if not 0 <= mode_index < model.modes.shape[1]:
        raise ValueError("mode index out of range")
    if range_check is None:
        range_check = lambda v: bool(np.all(np.diff(v) >= -1e-12))
    out = []
    for alpha in alphas:
        vec = model.mean + alpha * model.modes[:, mode_index]
        if range_check(vec):
            out.append(ModeSample(float(alpha), True, invert(vec)))
        else:
            out.append(ModeSample(float(alpha), False, None))
    return out
