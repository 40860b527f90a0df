"""File formats: CSV payloads with JSON sidecars for metadata.

A value saved to ``name.csv`` keeps its metadata in ``name.csv.json`` next to
it.  Signals are two-column CSV with a header line; grids are inferred from
the x column and must be uniform to one part in 1e9.  Images can also be
exported as plain PGM (P2), which quantizes to 16-bit integers; the CSV
route is the lossless one.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cdt import CdtRep
from .discrete_ot import DiscreteMeasure2D, TransportPlan
from .measures import (
    Density1D,
    DiscreteMeasure1D,
    Grid1D,
    QuantileRep,
    SignedDensity1D,
)
from .radon import Image2D, Sinogram
from .rcdt import RcdtRep, RscdtRep
from .scdt import ScdtRep
from .subspace import SubspaceModel
from .tbm import TbmModel


def _sidecar(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def _write_json(path, payload):
    _sidecar(path).write_text(json.dumps(payload, indent=2) + "\n")


def _read_json(path):
    return json.loads(_sidecar(path).read_text())


# -- 1D signals ---------------------------------------------------------------


def write_signal(path, grid: Grid1D, values) -> None:
    data = np.column_stack([grid.nodes(), np.asarray(values, dtype=float)])
    np.savetxt(path, data, delimiter=",", header="x,value", comments="")


def read_signal(path) -> tuple[Grid1D, np.ndarray]:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2 or data.shape[0] < 2:
        raise ValueError(f"{path}: expected two columns (x, value)")
    x, values = data[:, 0], data[:, 1]
    spacing = np.diff(x)
    mean = spacing.mean()
    if mean <= 0 or np.max(np.abs(spacing - mean)) > 1e-9 * abs(mean):
        raise ValueError(f"{path}: grid nodes are not uniformly spaced")
    return Grid1D(float(x[0]), float(x[-1]), len(x)), values


def read_density(path) -> Density1D:
    grid, values = read_signal(path)
    return Density1D(grid, values)


def read_signed_density(path) -> SignedDensity1D:
    grid, values = read_signal(path)
    return SignedDensity1D(grid, values)


# -- discrete measures and plans ----------------------------------------------


def write_discrete_measure(path, mu) -> None:
    if isinstance(mu, DiscreteMeasure1D):
        data = np.column_stack([mu.positions, mu.weights])
        header = "x,weight"
    else:
        data = np.column_stack([mu.positions, mu.weights])
        header = "x,y,weight"
    np.savetxt(path, data, delimiter=",", header=header, comments="")


def read_discrete_measure(path):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] == 2:
        return DiscreteMeasure1D(data[:, 0], data[:, 1])
    if data.shape[1] == 3:
        return DiscreteMeasure2D(data[:, :2], data[:, 2])
    raise ValueError(f"{path}: expected columns x[,y],weight")


def write_plan(path, plan: TransportPlan) -> None:
    i, j = np.nonzero(plan.entries)
    data = np.column_stack([i, j, plan.entries[i, j]])
    np.savetxt(path, data, delimiter=",", header="i,j,mass", comments="")
    _write_json(path, {"rows": plan.rows, "cols": plan.cols, "cost": plan.cost})


# -- transform representations ------------------------------------------------


def write_cdt_rep(path, rep: CdtRep) -> None:
    np.savetxt(path, rep.values, delimiter=",", header="quantile", comments="")
    lo, hi = rep.domain
    _write_json(path, {"m": rep.m, "lo": lo, "hi": hi})


def read_cdt_rep(path) -> CdtRep:
    meta = _read_json(path)
    values = np.loadtxt(path, delimiter=",", skiprows=1)
    return CdtRep(QuantileRep(np.atleast_1d(values), meta["lo"], meta["hi"]))


def write_scdt_rep(path, rep: ScdtRep) -> None:
    m = rep.m or 1
    pos = rep.q_plus.values if rep.q_plus is not None else np.zeros(m)
    neg = rep.q_minus.values if rep.q_minus is not None else np.zeros(m)
    np.savetxt(
        path,
        np.column_stack([pos, neg]),
        delimiter=",",
        header="pos_quantile,neg_quantile",
        comments="",
    )
    domain = None
    for q in (rep.q_plus, rep.q_minus):
        if q is not None:
            domain = q.domain
    _write_json(
        path,
        {
            "m": m,
            "mass_pos": rep.mass_plus,
            "mass_neg": rep.mass_minus,
            "lo": domain[0] if domain else 0.0,
            "hi": domain[1] if domain else 1.0,
        },
    )


def read_scdt_rep(path) -> ScdtRep:
    meta = _read_json(path)
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    lo, hi = meta["lo"], meta["hi"]
    q_plus = (
        CdtRep(QuantileRep(data[:, 0], lo, hi)) if meta["mass_pos"] > 0 else None
    )
    q_minus = (
        CdtRep(QuantileRep(data[:, 1], lo, hi)) if meta["mass_neg"] > 0 else None
    )
    return ScdtRep(q_plus, meta["mass_pos"], q_minus, meta["mass_neg"])


def write_rcdt_rep(path, rep: RcdtRep) -> None:
    np.savetxt(path, rep.values, delimiter=",")
    _write_json(
        path,
        {
            "m": rep.m,
            "n_theta": rep.n_theta,
            "extent": rep.extent,
            "channels": [{"name": "quantiles", "rows": rep.m}],
        },
    )


def read_rcdt_rep(path) -> RcdtRep:
    meta = _read_json(path)
    values = np.loadtxt(path, delimiter=",", ndmin=2)
    return RcdtRep(values, meta["extent"])


def write_rscdt_rep(path, rep: RscdtRep) -> None:
    stack = np.vstack(
        [rep.pos_values, rep.neg_values, rep.pos_masses[None, :], rep.neg_masses[None, :]]
    )
    np.savetxt(path, stack, delimiter=",")
    _write_json(
        path,
        {
            "m": rep.m,
            "n_theta": rep.n_theta,
            "extent": rep.extent,
            "channels": [
                {"name": "pos_quantiles", "rows": rep.m},
                {"name": "neg_quantiles", "rows": rep.m},
                {"name": "pos_masses", "rows": 1},
                {"name": "neg_masses", "rows": 1},
            ],
        },
    )


def read_rscdt_rep(path) -> RscdtRep:
    meta = _read_json(path)
    stack = np.loadtxt(path, delimiter=",", ndmin=2)
    m = meta["m"]
    return RscdtRep(
        stack[:m], stack[2 * m], stack[m : 2 * m], stack[2 * m + 1], meta["extent"]
    )


# -- images and sinograms ------------------------------------------------------


def write_image_csv(path, img: Image2D) -> None:
    np.savetxt(path, img.values, delimiter=",")
    _write_json(path, {"extent": img.extent, "height": img.height, "width": img.width})


def read_image_csv(path) -> Image2D:
    meta = _read_json(path)
    values = np.loadtxt(path, delimiter=",", ndmin=2)
    return Image2D(values, meta["extent"])


def write_image_pgm(path, img: Image2D, maxval: int = 65535) -> None:
    """Quantized ASCII PGM export; use the CSV route to preserve exact values."""
    v = img.values
    lo, hi = float(v.min()), float(v.max())
    scale = (hi - lo) or 1.0
    q = np.round((v - lo) / scale * maxval).astype(int)
    lines = ["P2", f"{img.width} {img.height}", f"{maxval}"]
    lines += [" ".join(str(x) for x in row) for row in q[::-1]]  # top row first
    Path(path).write_text("\n".join(lines) + "\n")
    _write_json(path, {"extent": img.extent, "lo": lo, "hi": hi, "maxval": maxval})


def read_image_pgm(path) -> Image2D:
    tokens = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if not tokens or tokens[0] != "P2":
        raise ValueError(f"{path}: not a plain P2 PGM file")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    data = np.array(tokens[4:], dtype=float).reshape(height, width)[::-1]
    meta = _read_json(path)
    values = data / maxval * (meta["hi"] - meta["lo"]) + meta["lo"]
    return Image2D(values, meta["extent"])


def write_sinogram(path, sino: Sinogram) -> None:
    np.savetxt(path, sino.values, delimiter=",")
    _write_json(
        path, {"n_t": sino.n_t, "n_theta": sino.n_theta, "extent": sino.extent}
    )


def read_sinogram(path) -> Sinogram:
    meta = _read_json(path)
    return Sinogram(np.loadtxt(path, delimiter=",", ndmin=2), meta["extent"])


# -- models and manifests -------------------------------------------------------


def write_subspace_model(path, model: SubspaceModel) -> None:
    payload = {
        "kind": "nearest-subspace",
        "classes": [
            {
                "label": label if not isinstance(label, np.generic) else label.item(),
                "mean": model.means[i].tolist(),
                "basis": model.bases[i].tolist(),
            }
            for i, label in enumerate(model.labels)
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_subspace_model(path) -> SubspaceModel:
    payload = json.loads(Path(path).read_text())
    labels = tuple(c["label"] for c in payload["classes"])
    means = np.array([c["mean"] for c in payload["classes"]])
    bases = tuple(
        np.array(c["basis"]).reshape(means.shape[1], -1) for c in payload["classes"]
    )
    return SubspaceModel(labels, means, bases)


def write_tbm_model(path, model: TbmModel) -> None:
    payload = {
        "kind": model.kind,
        "gamma": model.gamma,
        "mean": model.mean.tolist(),
        "modes": model.modes.tolist(),
        "eigenvalues": model.eigenvalues.tolist(),
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_tbm_model(path) -> TbmModel:
    payload = json.loads(Path(path).read_text())
    return TbmModel(
        np.array(payload["mean"]),
        np.array(payload["modes"]).reshape(len(payload["mean"]), -1),
        np.array(payload["eigenvalues"]),
        payload["kind"],
        payload.get("gamma"),
    )


def write_manifest(path, entries) -> None:
    """Dataset manifest: rows of (relative file path, label)."""
    lines = ["path,label"] + [f"{p},{label}" for p, label in entries]
    Path(path).write_text("\n".join(lines) + "\n")


def read_manifest(path) -> list[tuple[Path, str]]:
    base = Path(path).parent
    out = []
    for line in Path(path).read_text().splitlines()[1:]:
        if not line.strip():
            continue
        p, label = line.rsplit(",", 1)
        out.append((base / p, label))
    return out
