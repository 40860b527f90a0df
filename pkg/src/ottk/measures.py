"""Core machinery for measures on uniform 1D grids.

Densities are sampled at the nodes of a uniform grid and interpreted as
piecewise constant on node-centered cells (half cells at the ends), so the
total mass is the trapezoid-rule integral of the samples.  Cumulative
distribution functions, generalized inverses (quantile functions),
monotone pushforwards and the Hahn-Jordan splitting of signed densities
all live here; the transform modules are built on top of these pieces.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

# |mass - 1| below this is silently renormalized; larger deviations need
# an explicit normalize() call so user errors are not masked.
MASS_RTOL = 1e-6
# masses below this count as identically zero (signed parts, markers)
ZERO_MASS_TOL = 1e-12


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n`` nodes on ``[lo, hi]``, node k at lo + k*(hi-lo)/(n-1)."""

    lo: float
    hi: float
    n: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("grid requires lo < hi")
        if self.n < 2:
            raise ValueError("grid requires at least 2 nodes")

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    def cell_edges(self) -> np.ndarray:
        """Edges of the node-centered cells (n+1 values, half cells at the ends)."""
        nodes = self.nodes()
        mids = 0.5 * (nodes[1:] + nodes[:-1])
        return np.concatenate(([self.lo], mids, [self.hi]))

    def node_weights(self) -> np.ndarray:
        """Quadrature weights of the nodes; identical to trapezoid-rule weights."""
        w = np.full(self.n, self.spacing)
        w[0] = w[-1] = 0.5 * self.spacing
        return w


def _as_valid_values(grid, values, name):
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.n,):
        raise ValueError(f"{name} expects {grid.n} samples, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} samples must be finite")
    return values


@dataclass(frozen=True)
class Density1D:
    """Nonnegative density samples on a uniform grid."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = _as_valid_values(self.grid, self.values, "Density1D")
        if np.any(values < 0):
            raise ValueError("Density1D samples must be nonnegative")
        object.__setattr__(self, "values", values)

    def mass(self) -> float:
        return float(np.trapezoid(self.values, dx=self.grid.spacing))

    def normalize(self) -> "Density1D":
        m = self.mass()
        if m <= ZERO_MASS_TOL:
            raise ValueError("degenerate measure")
        return Density1D(self.grid, self.values / m)


@dataclass(frozen=True)
class SignedDensity1D:
    """Real-valued density samples on a uniform grid (may change sign)."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = _as_valid_values(self.grid, self.values, "SignedDensity1D")
        object.__setattr__(self, "values", values)

    def total_variation(self) -> float:
        """L1 norm of the density."""
        return float(np.trapezoid(np.abs(self.values), dx=self.grid.spacing))

    def net_mass(self) -> float:
        return float(np.trapezoid(self.values, dx=self.grid.spacing))


@dataclass(frozen=True)
class Cdf1D:
    """Nondecreasing CDF samples on a uniform grid, reaching 1 at the last node."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = _as_valid_values(self.grid, self.values, "Cdf1D")
        if values[0] < -1e-12 or abs(values[-1] - 1.0) > 1e-12:
            raise ValueError("invalid CDF")
        if np.any(np.diff(values) < -1e-12):
            raise ValueError("invalid CDF")
        # clean tiny float noise so downstream searches see a true staircase
        values = np.maximum.accumulate(np.clip(values, 0.0, 1.0))
        values[-1] = 1.0
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class QuantileRep:
    """Generalized-inverse samples at the midpoints xi_j = (j+1/2)/m of (0,1).

    ``lo``/``hi`` record the domain of the source measure; sample values are
    nondecreasing and stay inside it.
    """

    values: np.ndarray
    lo: float
    hi: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("QuantileRep expects a nonempty vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("QuantileRep samples must be finite")
        if np.any(np.diff(values) < -1e-9 * (self.hi - self.lo)):
            raise ValueError("QuantileRep samples must be nondecreasing")
        pad = 1e-9 * (self.hi - self.lo)
        if values[0] < self.lo - pad or values[-1] > self.hi + pad:
            raise ValueError("QuantileRep samples leave the stated domain")
        values = np.maximum.accumulate(np.clip(values, self.lo, self.hi))
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return self.values.size

    def xi_nodes(self) -> np.ndarray:
        return (np.arange(self.m) + 0.5) / self.m


@dataclass(frozen=True)
class DiscreteMeasure1D:
    """Weighted atoms on the line, stored sorted by position."""

    positions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if pos.size == 0 or pos.size != w.size:
            raise ValueError("atoms need matching nonempty positions and weights")
        if np.any(w <= 0):
            raise ValueError("atom weights must be positive")
        order = np.argsort(pos, kind="stable")
        object.__setattr__(self, "positions", pos[order])
        object.__setattr__(self, "weights", w[order])

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def is_probability(self, tol=1e-12) -> bool:
        return abs(self.total_mass() - 1.0) <= tol

    def normalize(self) -> "DiscreteMeasure1D":
        return DiscreteMeasure1D(self.positions, self.weights / self.total_mass())


def cdf_from_density(f: Density1D) -> Cdf1D:
    """Cumulative integral of a unit-mass density, renormalized to end at 1.

    Raises if the density is degenerate (zero mass) or not normalized to
    within ``MASS_RTOL`` (call :meth:`Density1D.normalize` first).
    """
    cell_mass = 0.5 * (f.values[1:] + f.values[:-1]) * f.grid.spacing
    total = float(cell_mass.sum())
    if total <= ZERO_MASS_TOL:
        raise ValueError("degenerate measure")
    if abs(total - 1.0) > MASS_RTOL:
        raise ValueError(
            f"density mass {total:.6g} differs from 1 by more than {MASS_RTOL}; "
            "normalize() it explicitly"
        )
    values = np.concatenate(([0.0], np.cumsum(cell_mass))) / total
    values[-1] = 1.0
    return Cdf1D(f.grid, values)


def quantile_at_levels(F: Cdf1D, levels: np.ndarray) -> np.ndarray:
    """Evaluate inf{x : F(x) > y} for each level y in [0, 1).

    Linear interpolation inside strictly increasing segments; a level lying
    on a flat stretch of F maps to the right endpoint of that stretch.
    """
    levels = np.asarray(levels, dtype=float)
    nodes = F.grid.nodes()
    vals = F.values
    idx = np.searchsorted(vals, levels, side="right")
    idx = np.minimum(idx, vals.size - 1)
    below = idx - 1
    out = np.empty_like(levels)
    at_start = below < 0
    out[at_start] = nodes[0]
    ok = ~at_start
    lo_v = vals[below[ok]]
    hi_v = vals[idx[ok]]
    # hi_v == lo_v only when a level sits at/above the CDF top; take the node
    gap = np.where(hi_v > lo_v, hi_v - lo_v, 1.0)
    frac = np.where(hi_v > lo_v, (levels[ok] - lo_v) / gap, 1.0)
    out[ok] = nodes[below[ok]] + frac * (nodes[idx[ok]] - nodes[below[ok]])
    return out


def quantile_from_cdf(F: Cdf1D, m: int) -> QuantileRep:
    """Sample the generalized inverse of F at the m midpoint levels of (0,1)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    xi = (np.arange(m) + 0.5) / m
    return QuantileRep(quantile_at_levels(F, xi), F.grid.lo, F.grid.hi)


def quantile_of_discrete(mu: DiscreteMeasure1D, m: int) -> QuantileRep:
    """Exact quantile samples of an atomic probability measure."""
    if not mu.is_probability(tol=1e-9):
        raise ValueError("measure must be normalized")
    xi = (np.arange(m) + 0.5) / m
    cum = np.cumsum(mu.weights)
    cum[-1] = max(cum[-1], 1.0)
    idx = np.searchsorted(cum, xi, side="right")
    idx = np.minimum(idx, mu.positions.size - 1)
    vals = mu.positions[idx]
    return QuantileRep(vals, float(mu.positions[0]), float(mu.positions[-1]))


def discrete_cdf_at(mu: DiscreteMeasure1D, x: np.ndarray) -> np.ndarray:
    """CDF of an atomic measure with the mass-strictly-below convention."""
    x = np.asarray(x, dtype=float)
    cum = np.concatenate(([0.0], np.cumsum(mu.weights)))
    idx = np.searchsorted(mu.positions, x, side="left")
    return cum[idx]


def deposit_segments(starts, ends, masses, grid: Grid1D) -> np.ndarray:
    """Bin uniform mass segments [start, end] onto a grid's node cells.

    Returns node density values whose trapezoid integral equals the total
    deposited mass exactly.  Segments of (numerically) zero width count as
    atoms and land in the single containing cell.  The grid must cover
    every segment.
    """
    starts = np.asarray(starts, dtype=float)
    ends = np.asarray(ends, dtype=float)
    masses = np.asarray(masses, dtype=float)
    edges = grid.cell_edges()
    span = grid.hi - grid.lo
    pad = 1e-9 * span
    if starts.min() < grid.lo - pad or ends.max() > grid.hi + pad:
        raise ValueError("output grid does not cover the transported support")
    starts = np.clip(starts, grid.lo, grid.hi)
    ends = np.clip(ends, grid.lo, grid.hi)

    widths = ends - starts
    atom = widths <= 1e-14 * span
    cell_mass = np.zeros(grid.n)

    if np.any(~atom):
        a = starts[~atom][:, None]
        w = widths[~atom][:, None]
        m = masses[~atom][:, None]
        # cumulative fraction of each segment to the left of every edge
        frac = np.clip((edges[None, :] - a) / w, 0.0, 1.0)
        cell_mass += (m * np.diff(frac, axis=1)).sum(axis=0)
    if np.any(atom):
        pos = 0.5 * (starts[atom] + ends[atom])
        idx = np.clip(np.searchsorted(edges, pos, side="right") - 1, 0, grid.n - 1)
        np.add.at(cell_mass, idx, masses[atom])

    return cell_mass / grid.node_weights()


def pushforward_monotone(map_values, mu: Density1D, out_grid: Grid1D | None = None) -> Density1D:
    """Push a density through a nondecreasing map sampled on its grid.

    Cell masses are reassigned to the image cells with linear splitting, so
    the total mass is conserved to machine precision.
    """
    T = np.asarray(map_values, dtype=float)
    if T.shape != (mu.grid.n,):
        raise ValueError("map samples must align with the density grid")
    if np.any(np.diff(T) < 0):
        raise ValueError("pushforward map must be nondecreasing")
    if out_grid is None:
        lo, hi = float(T[0]), float(T[-1])
        if not lo < hi:
            raise ValueError("map range is degenerate; provide out_grid")
        out_grid = Grid1D(lo, hi, mu.grid.n)

    # image of the node-cell edges under the (interpolated) map
    t_mid = 0.5 * (T[1:] + T[:-1])
    img_edges = np.concatenate(([T[0]], t_mid, [T[-1]]))
    cell_mass = mu.values * mu.grid.node_weights()
    values = deposit_segments(img_edges[:-1], img_edges[1:], cell_mass, out_grid)
    return Density1D(out_grid, values)


def jordan_split(f: SignedDensity1D):
    """Pointwise positive/negative parts of a signed density and their L1 masses.

    Parts whose mass falls below ``ZERO_MASS_TOL`` are snapped to identically
    zero so numerical noise cannot create spurious signed components.
    """
    pos = np.maximum(f.values, 0.0)
    neg = np.maximum(-f.values, 0.0)
    h = f.grid.spacing
    mass_pos = float(np.trapezoid(pos, dx=h))
    mass_neg = float(np.trapezoid(neg, dx=h))
    if mass_pos < ZERO_MASS_TOL:
        pos = np.zeros_like(pos)
        mass_pos = 0.0
    if mass_neg < ZERO_MASS_TOL:
        neg = np.zeros_like(neg)
        mass_neg = 0.0
    return Density1D(f.grid, pos), mass_pos, Density1D(f.grid, neg), mass_neg
