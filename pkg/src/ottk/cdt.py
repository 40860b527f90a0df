"""The cumulative distribution transform (CDT) of 1D probability densities.

The transform of a density is its quantile function sampled at midpoint
levels; it is the optimal transport map from the uniform measure on [0, 1]
to the density, so the plain L2 distance between two transforms equals
their 2-Wasserstein distance, straight lines between transforms invert to
displacement interpolations, and composing with an increasing map acts on
the transform by plain function composition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import (
    Density1D,
    Grid1D,
    QuantileRep,
    cdf_from_density,
    deposit_segments,
    quantile_from_cdf,
)


@dataclass(frozen=True)
class CdtRep:
    """A density's transform: quantile samples plus the source domain."""

    q: QuantileRep

    @property
    def m(self) -> int:
        return self.q.m

    @property
    def domain(self) -> tuple[float, float]:
        return (self.q.lo, self.q.hi)

    @property
    def values(self) -> np.ndarray:
        return self.q.values


@dataclass(frozen=True)
class MonotoneMap:
    """Strictly increasing map sampled on a uniform grid."""

    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise ValueError("map samples must align with the grid")
        if np.min(np.diff(values)) <= 0:
            raise ValueError("map must be strictly increasing")
        object.__setattr__(self, "values", values)

    def __call__(self, x) -> np.ndarray:
        return np.interp(x, self.grid.nodes(), self.values)

    @property
    def range(self) -> tuple[float, float]:
        return (float(self.values[0]), float(self.values[-1]))


def cdt_forward(f: Density1D, m: int) -> CdtRep:
    """Transform a normalized density into m quantile samples."""
    return CdtRep(quantile_from_cdf(cdf_from_density(f), m))


def quantile_edges(q: QuantileRep) -> np.ndarray:
    """Quantile estimates at cell edges j/m, interpolated from the midpoints.

    Endpoint values are linearly extended and clipped to the domain so each
    of the m mass cells gets a well-defined image interval.
    """
    v = q.values
    if q.m == 1:
        return np.array([v[0], v[0]])
    edges = np.empty(q.m + 1)
    edges[1:-1] = 0.5 * (v[:-1] + v[1:])
    edges[0] = max(q.lo, v[0] - 0.5 * (v[1] - v[0]))
    edges[-1] = min(q.hi, v[-1] + 0.5 * (v[-1] - v[-2]))
    return np.maximum.accumulate(edges)


def cdt_inverse(rep: CdtRep, out_grid: Grid1D) -> Density1D:
    """Reconstruct the density: push the uniform measure through the quantiles.

    Each of the m level cells carries mass 1/m and is deposited uniformly on
    its image interval, so the output is nonnegative with unit mass.
    """
    edges = quantile_edges(rep.q)
    masses = np.full(rep.m, 1.0 / rep.m)
    values = deposit_segments(edges[:-1], edges[1:], masses, out_grid)
    return Density1D(out_grid, values)


def d_cdt(r1: CdtRep, r2: CdtRep) -> float:
    """Transform-space L2 distance; equals the 2-Wasserstein distance."""
    from .discrete_ot import w2_1d

    return w2_1d(r1.q, r2.q)


def cdt_geodesic_rep(r1: CdtRep, r2: CdtRep, t: float) -> CdtRep:
    """Point on the straight line between two transforms (exact geodesic)."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    if r1.m != r2.m:
        raise ValueError("transforms must share the same number of samples")
    vals = (1.0 - t) * r1.values + t * r2.values
    lo = min(r1.q.lo, r2.q.lo)
    hi = max(r1.q.hi, r2.q.hi)
    return CdtRep(QuantileRep(vals, lo, hi))


def cdt_geodesic(r1: CdtRep, r2: CdtRep, t: float, out_grid: Grid1D) -> Density1D:
    """Displacement interpolation between the two source densities."""
    return cdt_inverse(cdt_geodesic_rep(r1, r2, t), out_grid)


def cdt_apply_map(g: MonotoneMap, rep: CdtRep) -> CdtRep:
    """Compose an increasing map with a transform.

    The result is the transform of the pushforward of the source measure,
    by the composition rule of the transform under increasing maps.
    """
    lo, hi = g.range
    vals = g(rep.values)
    return CdtRep(QuantileRep(vals, lo, hi))


def normalized_energy_density(signal, grid: Grid1D) -> Density1D:
    """Convert a raw signal into its unit-mass energy density s**2 / ||s||**2.

    Never applied implicitly by the transforms; callers working with signed
    or arbitrary-amplitude signals opt in through this utility.
    """
    s = np.asarray(signal, dtype=float)
    if s.shape != (grid.n,):
        raise ValueError("signal samples must align with the grid")
    energy = s * s
    total = np.trapezoid(energy, dx=grid.spacing)
    if total <= 0:
        raise ValueError("degenerate measure")
    return Density1D(grid, energy / total)
