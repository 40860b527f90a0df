"""Nearest-subspace classification of transform-space vectors.

Each class is modeled by the affine subspace through its training mean
spanned by the top principal directions of its samples; a query is assigned
to the class whose subspace leaves the smallest orthogonal residual.
Classes generated by translations and dilations of a template are exact
low-dimensional affine sets in transform space, which is what makes this
classifier work there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SubspaceModel:
    labels: tuple
    means: np.ndarray  # (n_classes, dim)
    bases: tuple  # per class: (dim, k) orthonormal columns

    @property
    def dim(self) -> int:
        return self.means.shape[1]


def fit_nearest_subspace(vectors, labels, dim: int) -> SubspaceModel:
    """Fit one affine subspace of dimension ``dim`` per class.

    Needs at least dim + 1 samples per class.  Bases come from the SVD of
    the centered class samples; directions with negligible singular values
    are dropped, so fully degenerate classes get a 0-dimensional subspace.
    """
    X = np.asarray(vectors, dtype=float)
    y = np.asarray(labels)
    if X.ndim != 2 or X.shape[0] != y.size:
        raise ValueError("need one label per sample row")
    classes = tuple(sorted(set(y.tolist())))
    means = []
    bases = []
    for c in classes:
        rows = X[y == c]
        if rows.shape[0] < dim + 1:
            raise ValueError(f"class {c!r}: too few samples for dimension {dim}")
        mean = rows.mean(axis=0)
        centered = rows - mean
        u, s, vt = np.linalg.svd(centered, full_matrices=False)
        scale = s[0] if s.size and s[0] > 0 else 1.0
        keep = min(dim, int(np.sum(s > 1e-10 * scale)))
        means.append(mean)
        bases.append(vt[:keep].T.copy())
    return SubspaceModel(classes, np.array(means), tuple(bases))


def subspace_residual(model: SubspaceModel, sample) -> np.ndarray:
    """Orthogonal residual of a sample against every class subspace."""
    v = np.asarray(sample, dtype=float).ravel()
    if v.size != model.dim:
        raise ValueError("sample dimension does not match the model")
    res = np.empty(len(model.labels))
    for i, basis in enumerate(model.bases):
        d = v - model.means[i]
        if basis.shape[1]:
            d = d - basis @ (basis.T @ d)
        res[i] = np.sqrt(np.dot(d, d))
    return res


def classify(model: SubspaceModel, sample):
    """Label of the nearest subspace; ties resolve to the lowest class index."""
    res = subspace_residual(model, sample)
    return model.labels[int(np.argmin(res))]
