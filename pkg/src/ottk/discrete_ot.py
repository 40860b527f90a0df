"""Exact discrete optimal transport at desk scale.

Quadratic-cost Kantorovich plans for weighted atom sets (linear programming,
with a Hungarian fast path for equal-weight point clouds), the closed-form
1D Wasserstein distance through quantile functions, the sliced distance for
planar clouds, and the linear-optimal-transport embedding against a fixed
reference together with its distance and geodesics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog

from .measures import DiscreteMeasure1D, QuantileRep

_WEIGHT_TOL = 1e-9
_MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class DiscreteMeasure2D:
    """Weighted atoms in the plane."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        w = np.asarray(self.weights, dtype=float).ravel()
        if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] != w.size or w.size == 0:
            raise ValueError("positions must be (n, 2) with matching weights")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "weights", w)

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def is_probability(self, tol=1e-12) -> bool:
        return abs(self.total_mass() - 1.0) <= tol

    def normalize(self) -> "DiscreteMeasure2D":
        return DiscreteMeasure2D(self.positions, self.weights / self.total_mass())


def _atoms(mu):
    """Positions as (n, d) plus weights, for 1D or 2D measures."""
    if isinstance(mu, DiscreteMeasure1D):
        return mu.positions[:, None], mu.weights
    if isinstance(mu, DiscreteMeasure2D):
        return mu.positions, mu.weights
    raise TypeError("expected a DiscreteMeasure1D or DiscreteMeasure2D")


@dataclass(frozen=True)
class TransportPlan:
    """Dense coupling matrix between two atom sets and its quadratic cost."""

    entries: np.ndarray
    cost: float

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def _sq_dists(x, y):
    diff = x[:, None, :] - y[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def solve_kantorovich(mu, nu) -> TransportPlan:
    """Exact optimal plan for the squared-Euclidean cost.

    Equal-weight inputs of matching size go through the assignment solver;
    everything else is solved as an explicit linear program.  The returned
    cost is the squared 2-Wasserstein distance.
    """
    x, wx = _atoms(mu)
    y, wy = _atoms(nu)
    if x.shape[1] != y.shape[1]:
        raise ValueError("measures live in different dimensions")
    if abs(wx.sum() - 1.0) > _WEIGHT_TOL or abs(wy.sum() - 1.0) > _WEIGHT_TOL:
        raise ValueError("measures must be normalized to unit mass")
    n, m = len(wx), len(wy)
    cost_mat = _sq_dists(x, y)

    equal = (
        n == m
        and np.allclose(wx, 1.0 / n, atol=1e-12)
        and np.allclose(wy, 1.0 / n, atol=1e-12)
    )
    if equal:
        rows, cols = linear_sum_assignment(cost_mat)
        plan = np.zeros((n, m))
        plan[rows, cols] = 1.0 / n
    else:
        # sparse marginal constraints; the last column sum is implied
        from scipy.sparse import coo_matrix

        var = np.arange(n * m)
        row_con = var // m
        col_con = n + (var % m)
        keep = col_con < n + m - 1
        rows = np.concatenate([row_con, col_con[keep]])
        cols = np.concatenate([var, var[keep]])
        a_eq = coo_matrix(
            (np.ones(rows.size), (rows, cols)), shape=(n + m - 1, n * m)
        ).tocsr()
        b_eq = np.concatenate([wx, wy[:-1]])
        res = linprog(
            cost_mat.ravel(),
            A_eq=a_eq,
            b_eq=b_eq,
            bounds=(0, None),
            method="highs",
        )
        if not res.success:
            raise ValueError(f"transport LP failed: {res.message}")
        plan = res.x.reshape(n, m)

    plan = np.maximum(plan, 0.0)
    if (
        np.max(np.abs(plan.sum(axis=1) - wx)) > _MARGINAL_TOL
        or np.max(np.abs(plan.sum(axis=0) - wy)) > _MARGINAL_TOL
    ):
        raise ValueError("solver returned an infeasible plan")
    return TransportPlan(plan, float((plan * cost_mat).sum()))


def w2_1d(q1: QuantileRep, q2: QuantileRep) -> float:
    """1D Wasserstein distance as the RMS gap between quantile samples."""
    if q1.m != q2.m:
        raise ValueError("quantile representations must share the same m")
    return float(np.sqrt(np.mean((q1.values - q2.values) ** 2)))


def w2_discrete_1d(mu: DiscreteMeasure1D, nu: DiscreteMeasure1D) -> float:
    """Exact W2 between atomic 1D measures via the merged quantile staircase."""
    if not (mu.is_probability(1e-9) and nu.is_probability(1e-9)):
        raise ValueError("measures must be normalized to unit mass")
    cw1 = np.cumsum(mu.weights)
    cw2 = np.cumsum(nu.weights)
    levels = np.union1d(cw1, cw2)
    levels[-1] = 1.0
    prev = np.concatenate(([0.0], levels[:-1]))
    seg = levels - prev
    mid = 0.5 * (levels + prev)
    i1 = np.minimum(np.searchsorted(cw1, mid, side="right"), len(cw1) - 1)
    i2 = np.minimum(np.searchsorted(cw2, mid, side="right"), len(cw2) - 1)
    gaps = mu.positions[i1] - nu.positions[i2]
    return float(np.sqrt(np.sum(seg * gaps * gaps)))


def sw2_pointcloud(mu: DiscreteMeasure2D, nu: DiscreteMeasure2D, n_angles: int = 180) -> float:
    """Sliced W2: average squared 1D distance over midpoint angles in [0, pi)."""
    if n_angles < 1:
        raise ValueError("n_angles must be at least 1")
    from .radon import slice_pointcloud

    thetas = (np.arange(n_angles) + 0.5) * np.pi / n_angles
    total = 0.0
    for th in thetas:
        total += w2_discrete_1d(slice_pointcloud(mu, th), slice_pointcloud(nu, th)) ** 2
    return float(np.sqrt(total / n_angles))


@dataclass(frozen=True)
class LotEmbedding:
    """A measure embedded as a map on the atoms of a fixed reference."""

    reference: DiscreteMeasure1D | DiscreteMeasure2D
    map_values: np.ndarray

    def __post_init__(self):
        ref_pos, _ = _atoms(self.reference)
        mv = np.asarray(self.map_values, dtype=float)
        if mv.shape != ref_pos.shape:
            raise ValueError("map values must match the reference atoms")
        object.__setattr__(self, "map_values", mv)

    @property
    def velocity(self) -> np.ndarray:
        ref_pos, _ = _atoms(self.reference)
        return self.map_values - ref_pos


def lot_embed(nu, reference) -> LotEmbedding:
    """Embed a measure as the barycentric projection of its plan from the reference.

    Exact (a Monge map) whenever the optimal plan does not split reference
    atoms, e.g. equal-weight clouds of matching size; otherwise the
    projection is the customary approximation.
    """
    ref_pos, ref_w = _atoms(reference)
    if ref_pos.shape[1] > 1 and ref_pos.shape[0] < 2:
        raise ValueError("reference too coarse")
    y, _ = _atoms(nu)
    plan = solve_kantorovich(reference, nu)
    mapped = (plan.entries @ y) / ref_w[:, None]
    return LotEmbedding(reference, mapped)


def _check_same_reference(e1: LotEmbedding, e2: LotEmbedding):
    p1, w1 = _atoms(e1.reference)
    p2, w2 = _atoms(e2.reference)
    if p1.shape != p2.shape or not np.allclose(p1, p2) or not np.allclose(w1, w2):
        raise ValueError("embeddings use different references")


def d_lot(e1: LotEmbedding, e2: LotEmbedding) -> float:
    """Reference-weighted L2 distance between embedded maps."""
    _check_same_reference(e1, e2)
    _, w = _atoms(e1.reference)
    gaps = ((e1.map_values - e2.map_values) ** 2).sum(axis=1)
    return float(np.sqrt(np.sum(w * gaps)))


def lot_geodesic_embedding(e1: LotEmbedding, e2: LotEmbedding, t: float) -> LotEmbedding:
    """Point on the straight line between two embeddings."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    _check_same_reference(e1, e2)
    return LotEmbedding(e1.reference, (1.0 - t) * e1.map_values + t * e2.map_values)


def lot_geodesic(e1: LotEmbedding, e2: LotEmbedding, t: float):
    """Interpolating measure: reference weights at the interpolated map points."""
    e = lot_geodesic_embedding(e1, e2, t)
    _, w = _atoms(e.reference)
    if e.map_values.shape[1] == 1:
        return DiscreteMeasure1D(e.map_values[:, 0], w)
    return DiscreteMeasure2D(e.map_values, w)
