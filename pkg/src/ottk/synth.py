"""Reproducible synthetic signals and phantoms for tests, demos, and the CLI.

Everything randomized takes an explicit seed; identical seeds give identical
arrays.
"""

from __future__ import annotations

import numpy as np

from .measures import Density1D, Grid1D, SignedDensity1D
from .radon import Image2D


def gaussian_bump(grid: Grid1D, center: float, sigma: float) -> Density1D:
    x = grid.nodes()
    return Density1D(grid, np.exp(-0.5 * ((x - center) / sigma) ** 2)).normalize()


def gaussian_pair(
    grid: Grid1D, c1=0.3, s1=0.05, c2=0.7, s2=0.08
) -> tuple[Density1D, Density1D]:
    """Two separated unit-mass bumps, the stock interpolation example."""
    return gaussian_bump(grid, c1, s1), gaussian_bump(grid, c2, s2)


def _template_bank(x):
    """Three bump shapes that are not affine deformations of one another."""
    gauss = np.exp(-0.5 * (x / 0.3) ** 2)
    twin = np.exp(-0.5 * ((x - 0.45) / 0.22) ** 2) + np.exp(
        -0.5 * ((x + 0.45) / 0.22) ** 2
    )
    skew = np.exp(-0.5 * (x / 0.25) ** 2) * (1.0 + np.tanh(1.2 * x))
    return [gauss, twin, skew]


def bump_templates(grid: Grid1D) -> list[Density1D]:
    """The three class templates, centered at the middle of the grid."""
    mid = 0.5 * (grid.lo + grid.hi)
    x = grid.nodes() - mid
    return [Density1D(grid, v).normalize() for v in _template_bank(x)]


def deformed_template(
    grid: Grid1D, template_index: int, omega: float, tau: float
) -> Density1D:
    """Mass-preserving deformation omega*f(omega*x - tau) of a class template.

    Evaluated analytically on the grid, so no resampling error enters.
    """
    mid = 0.5 * (grid.lo + grid.hi)
    x = omega * (grid.nodes() - mid) - tau
    vals = omega * _template_bank(x)[template_index]
    return Density1D(grid, vals).normalize()


def sample_deformations(rng, n, omega_range=(0.7, 1.6), tau_range=(-0.25, 0.25)):
    omegas = rng.uniform(*omega_range, n)
    taus = rng.uniform(*tau_range, n)
    return omegas, taus


def disc_phantom(size: int, extent: float = 1.0, radius: float = 0.6,
                 center=(0.0, 0.0)) -> Image2D:
    """Unit-mass indicator of a disc, rasterized by pixel-center membership."""
    img = Image2D(np.zeros((size, size)), extent)
    xs, ys = img.pixel_centers()
    X, Y = np.meshgrid(xs, ys)
    inside = (X - center[0]) ** 2 + (Y - center[1]) ** 2 <= radius**2
    return Image2D(inside.astype(float), extent).normalize()


def gaussian_blob_image(
    size: int, extent: float = 1.0, center=(0.0, 0.0), sigma=0.2, normalized=True
) -> Image2D:
    img = Image2D(np.zeros((size, size)), extent)
    xs, ys = img.pixel_centers()
    X, Y = np.meshgrid(xs, ys)
    vals = np.exp(-0.5 * (((X - center[0]) ** 2 + (Y - center[1]) ** 2) / sigma**2))
    out = Image2D(vals, extent)
    return out.normalize() if normalized else out


def cosine_bump_image(
    size: int, extent: float = 1.0, center=(0.0, 0.0), radius: float = 0.5
) -> Image2D:
    """Smooth compactly supported bump cos^2(pi r / (2 radius)) inside r < radius.

    The sharp-but-smooth support edge keeps extreme quantiles of its
    projections stable, unlike Gaussian tails.
    """
    img = Image2D(np.zeros((size, size)), extent)
    xs, ys = img.pixel_centers()
    X, Y = np.meshgrid(xs, ys)
    r = np.sqrt((X - center[0]) ** 2 + (Y - center[1]) ** 2)
    vals = np.where(r < radius, np.cos(np.pi * r / (2 * radius)) ** 2, 0.0)
    return Image2D(vals, extent).normalize()


def smooth_phantom(size: int, extent: float = 1.0) -> Image2D:
    """Smooth multi-bump phantom supported well inside the reconstruction disc."""
    img = Image2D(np.zeros((size, size)), extent)
    xs, ys = img.pixel_centers()
    X, Y = np.meshgrid(xs, ys)
    vals = (
        1.0 * np.exp(-0.5 * ((X + 0.25) ** 2 + (Y - 0.1) ** 2) / 0.18**2)
        + 0.7 * np.exp(-0.5 * ((X - 0.3) ** 2 + (Y + 0.2) ** 2) / 0.12**2)
        + 0.4 * np.exp(-0.5 * (X**2 + (Y - 0.35) ** 2) / 0.1**2)
    )
    return Image2D(vals, extent).normalize()


def signed_two_bump_image(size: int, extent: float = 1.0) -> Image2D:
    """A positive and a negative Gaussian bump with separated supports."""
    pos = gaussian_blob_image(size, extent, center=(-0.35, 0.0), sigma=0.13,
                              normalized=False)
    neg = gaussian_blob_image(size, extent, center=(0.35, 0.1), sigma=0.16,
                              normalized=False)
    return Image2D(pos.values - 0.8 * neg.values, extent)


def rasterize_pointcloud(mu, size: int, extent: float = 1.0) -> Image2D:
    """Deposit atoms onto pixel centers with bilinear weights."""
    vals = np.zeros((size, size))
    px = 2 * extent / size
    for (x, y), w in zip(mu.positions, mu.weights):
        fx = (x + extent) / px - 0.5
        fy = (y + extent) / px - 0.5
        i0, j0 = int(np.floor(fx)), int(np.floor(fy))
        tx, ty = fx - i0, fy - j0
        for di, wx in ((0, 1 - tx), (1, tx)):
            for dj, wy in ((0, 1 - ty), (1, ty)):
                ii, jj = i0 + di, j0 + dj
                if 0 <= ii < size and 0 <= jj < size:
                    vals[jj, ii] += w * wx * wy
    return Image2D(vals / (px * px), extent)


def signed_two_bump_signal(grid: Grid1D) -> SignedDensity1D:
    x = grid.nodes()
    span = grid.hi - grid.lo
    c1 = grid.lo + 0.3 * span
    c2 = grid.lo + 0.7 * span
    vals = np.exp(-0.5 * ((x - c1) / (0.06 * span)) ** 2) - 0.8 * np.exp(
        -0.5 * ((x - c2) / (0.08 * span)) ** 2
    )
    return SignedDensity1D(grid, vals)
