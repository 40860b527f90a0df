"""Affine deformation estimation in transform space.

A template deformed by t -> omega*t - tau (with the density factor that
keeps mass fixed) shows up in transform space as a straight line a*q + b
with a = 1/omega, b = tau/omega, so the deformation parameters drop out of
a scalar linear least-squares fit between the two transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cdt import cdt_forward
from .linalg import lstsq_affine
from .measures import Density1D


@dataclass(frozen=True)
class EstimationResult:
    """Fitted transform-space line (a, b), physical parameters, fit residual."""

    a: float
    b: float
    omega: float
    tau: float
    residual: float


def fit_transform_line(q_template, q_observed) -> EstimationResult:
    """Fit observed = a*template + b in transform space and invert to (omega, tau).

    A fit with a <= 0 falls outside the admissible (orientation-preserving)
    deformations and is rejected.
    """
    q_f = np.asarray(q_template, dtype=float).ravel()
    q_h = np.asarray(q_observed, dtype=float).ravel()
    a, b = lstsq_affine(q_f, q_h)
    if a <= 0:
        raise ValueError("orientation-reversing fit")
    residual = float(np.sqrt(np.mean((a * q_f + b - q_h) ** 2)))
    return EstimationResult(a, b, omega=1.0 / a, tau=b / a, residual=residual)


def estimate_affine(template: Density1D, observed: Density1D, m: int = 1024) -> EstimationResult:
    """Recover (omega, tau) from a template and its deformed observation.

    Both inputs must already be unit-mass densities (use
    :func:`ottk.cdt.normalized_energy_density` for raw signals).  The
    residual is reported in transform-space distance units.
    """
    return fit_transform_line(
        cdt_forward(template, m).values, cdt_forward(observed, m).values
    )
