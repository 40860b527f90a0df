"""Command-line front end: every subcommand is a thin shell over the library.

Exit codes: 0 success, 1 usage error, 2 data or validation error.  Image
outputs default to CSV with a JSON sidecar; pass ``--format pgm`` for a
quantized PGM export.  All randomness sits behind the required ``--seed``
of ``synth``, so identical invocations produce identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io as oio
from .cdt import CdtRep, cdt_forward, cdt_geodesic_rep, cdt_inverse, d_cdt, normalized_energy_density
from .discrete_ot import d_lot, lot_embed, lot_geodesic, solve_kantorovich, sw2_pointcloud
from .measures import Density1D, Grid1D, QuantileRep
from .radon import radon_forward, radon_inverse
from .rcdt import d_rcdt, d_rscdt, rcdt_forward, rcdt_inverse, rscdt_forward, rscdt_inverse
from .scdt import d_scdt, scdt_forward, scdt_geodesic_positive, scdt_inverse
from .subspace import classify, fit_nearest_subspace
from .tbm import tbm_pca, tbm_plda, visualize_mode
from . import synth


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_global_options(parser, suppress):
    """The global flags are accepted before or after the subcommand."""
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--m", type=int, help="transform sample count",
                        **({"default": default} if suppress else {"default": 256}))
    parser.add_argument("--n-theta", type=int, help="projection angle count",
                        **({"default": default} if suppress else {"default": 180}))
    parser.add_argument("--seed", type=int, help="seed for randomized generators",
                        **({"default": default} if suppress else {"default": None}))
    parser.add_argument("--format", choices=["csv", "pgm"],
                        help="image output format",
                        **({"default": default} if suppress else {"default": "csv"}))


def _build_parser() -> _Parser:
    p = _Parser(prog="ottk", description=__doc__)
    _add_global_options(p, suppress=False)
    shared = _Parser(add_help=False)
    _add_global_options(shared, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("transform", parents=[shared],
                       help="forward transform of a signal or image")
    t.add_argument("--kind", choices=["cdt", "scdt", "rcdt", "rscdt", "lot"], required=True)
    t.add_argument("--reference", help="reference measure CSV (lot only)")
    t.add_argument("input")
    t.add_argument("output")

    i = sub.add_parser("invert", parents=[shared], help="inverse transform of a representation")
    i.add_argument("--kind", choices=["cdt", "scdt", "rcdt", "rscdt"], required=True)
    i.add_argument("--grid-lo", type=float, help="output grid left endpoint")
    i.add_argument("--grid-hi", type=float, help="output grid right endpoint")
    i.add_argument("--grid-n", type=int, default=512, help="output grid size")
    i.add_argument("--size", type=int, default=256, help="output image side")
    i.add_argument("input")
    i.add_argument("output")

    d = sub.add_parser("distance", parents=[shared], help="transform-space distance between two inputs")
    d.add_argument("--kind", choices=["cdt", "scdt", "rcdt", "rscdt", "lot", "w2", "sw2"],
                   required=True)
    d.add_argument("--reference", help="reference measure CSV (lot only)")
    d.add_argument("a")
    d.add_argument("b")

    g = sub.add_parser("geodesic", parents=[shared], help="interpolate between two inputs; one CSV row per t")
    g.add_argument("--kind", choices=["cdt", "scdt", "lot"], required=True)
    g.add_argument("--steps", type=int, default=5, help="number of t values in [0, 1]")
    g.add_argument("--reference", help="reference measure CSV (lot only)")
    g.add_argument("--grid-n", type=int, default=512)
    g.add_argument("a")
    g.add_argument("b")
    g.add_argument("output")

    r = sub.add_parser("radon", parents=[shared], help="forward projection of an image")
    r.add_argument("--n-t", type=int, default=256)
    r.add_argument("input")
    r.add_argument("output")

    ir = sub.add_parser("iradon", parents=[shared], help="filtered back projection of a sinogram")
    ir.add_argument("--size", type=int, default=256)
    ir.add_argument("--window", choices=["ramp", "cosine"], default="ramp")
    ir.add_argument("input")
    ir.add_argument("output")

    e = sub.add_parser("estimate", parents=[shared], help="affine deformation parameters from a template")
    e.add_argument("--energy-normalize", action="store_true",
                   help="convert raw signals to energy densities first")
    e.add_argument("template")
    e.add_argument("observed")

    ct = sub.add_parser("classify-train", parents=[shared], help="fit a nearest-subspace model")
    ct.add_argument("--kind", choices=["cdt", "rcdt"],
                    help="transform (default: cdt for signals, rcdt for images)")
    ct.add_argument("--dim", type=int, default=2)
    ct.add_argument("manifest")
    ct.add_argument("model")

    cp = sub.add_parser("classify-predict", parents=[shared], help="classify one sample")
    cp.add_argument("--kind", choices=["cdt", "rcdt"],
                    help="transform (default: cdt for signals, rcdt for images)")
    cp.add_argument("model")
    cp.add_argument("sample")

    tp = sub.add_parser("tbm-pca", parents=[shared], help="principal transport modes of a dataset")
    tp.add_argument("--kind", choices=["cdt", "rcdt"],
                    help="transform (default: cdt for signals, rcdt for images)")
    tp.add_argument("--modes", type=int, default=2)
    tp.add_argument("manifest")
    tp.add_argument("model")

    tl = sub.add_parser("tbm-plda", parents=[shared], help="penalized discriminant transport modes")
    tl.add_argument("--kind", choices=["cdt", "rcdt"],
                    help="transform (default: cdt for signals, rcdt for images)")
    tl.add_argument("--modes", type=int, default=2)
    tl.add_argument("--gamma", type=float, required=True)
    tl.add_argument("manifest")
    tl.add_argument("model")

    tm = sub.add_parser("tbm-modes", parents=[shared], help="invert mean + alpha*mode sweeps")
    tm.add_argument("--mode", type=int, default=0)
    tm.add_argument("--alphas", required=True, help="comma-separated alpha values")
    tm.add_argument("--grid-lo", type=float, required=True)
    tm.add_argument("--grid-hi", type=float, required=True)
    tm.add_argument("--grid-n", type=int, default=512)
    tm.add_argument("model")
    tm.add_argument("outdir")

    s = sub.add_parser("synth", parents=[shared], help="write synthetic datasets")
    s.add_argument("--kind", required=True,
                   choices=["bump-templates", "gaussian-pair", "disc-phantom",
                            "signed-two-bump"])
    s.add_argument("--samples", type=int, default=10, help="deformations per class")
    s.add_argument("--size", type=int, default=128, help="image side for phantoms")
    s.add_argument("outdir")
    return p


def _read_density(path):
    return oio.read_density(path).normalize()


def _signal_rep(path, m):
    return cdt_forward(_read_density(path), m)


def _image(path):
    if str(path).endswith(".pgm"):
        return oio.read_image_pgm(path)
    return oio.read_image_csv(path)


def _write_image(path, img, fmt):
    if fmt == "pgm":
        oio.write_image_pgm(path, img)
    else:
        oio.write_image_csv(path, img)


def _cmd_transform(args):
    kind = args.kind
    if kind == "cdt":
        oio.write_cdt_rep(args.output, _signal_rep(args.input, args.m))
    elif kind == "scdt":
        oio.write_scdt_rep(args.output, scdt_forward(oio.read_signed_density(args.input), args.m))
    elif kind == "rcdt":
        rep = rcdt_forward(_image(args.input).normalize(), m=args.m, n_theta=args.n_theta)
        oio.write_rcdt_rep(args.output, rep)
    elif kind == "rscdt":
        rep = rscdt_forward(_image(args.input), m=args.m, n_theta=args.n_theta)
        oio.write_rscdt_rep(args.output, rep)
    else:  # lot
        if not args.reference:
            raise _UsageError("--reference is required for --kind lot")
        emb = lot_embed(oio.read_discrete_measure(args.input),
                        oio.read_discrete_measure(args.reference))
        data = np.column_stack([emb.map_values, emb.velocity])
        np.savetxt(args.output, data, delimiter=",",
                   header="map" + ",map" * (emb.map_values.shape[1] - 1)
                          + ",velocity" * emb.velocity.shape[1], comments="")
    return 0


def _cmd_invert(args):
    kind = args.kind
    if kind in ("cdt", "scdt"):
        if kind == "cdt":
            rep = oio.read_cdt_rep(args.input)
            lo, hi = rep.domain
        else:
            rep = oio.read_scdt_rep(args.input)
            meta = oio._read_json(args.input)
            lo, hi = meta["lo"], meta["hi"]
        lo = args.grid_lo if args.grid_lo is not None else lo
        hi = args.grid_hi if args.grid_hi is not None else hi
        grid = Grid1D(lo, hi, args.grid_n)
        if kind == "cdt":
            out = cdt_inverse(rep, grid)
        else:
            out = scdt_inverse(rep, grid)
        oio.write_signal(args.output, grid, out.values)
    elif kind == "rcdt":
        img = rcdt_inverse(oio.read_rcdt_rep(args.input), (args.size, args.size))
        _write_image(args.output, img, args.format)
    else:
        img = rscdt_inverse(oio.read_rscdt_rep(args.input), (args.size, args.size))
        _write_image(args.output, img, args.format)
    return 0


def _cmd_distance(args):
    kind = args.kind
    if kind == "cdt":
        value = d_cdt(_signal_rep(args.a, args.m), _signal_rep(args.b, args.m))
    elif kind == "scdt":
        value = d_scdt(scdt_forward(oio.read_signed_density(args.a), args.m),
                       scdt_forward(oio.read_signed_density(args.b), args.m))
    elif kind == "rcdt":
        value = d_rcdt(
            rcdt_forward(_image(args.a).normalize(), m=args.m, n_theta=args.n_theta),
            rcdt_forward(_image(args.b).normalize(), m=args.m, n_theta=args.n_theta),
        )
    elif kind == "rscdt":
        value = d_rscdt(
            rscdt_forward(_image(args.a), m=args.m, n_theta=args.n_theta),
            rscdt_forward(_image(args.b), m=args.m, n_theta=args.n_theta),
        )
    elif kind == "lot":
        if not args.reference:
            raise _UsageError("--reference is required for --kind lot")
        ref = oio.read_discrete_measure(args.reference)
        value = d_lot(lot_embed(oio.read_discrete_measure(args.a), ref),
                      lot_embed(oio.read_discrete_measure(args.b), ref))
    elif kind == "w2":
        plan = solve_kantorovich(oio.read_discrete_measure(args.a),
                                 oio.read_discrete_measure(args.b))
        value = float(np.sqrt(plan.cost))
    else:  # sw2
        value = sw2_pointcloud(oio.read_discrete_measure(args.a),
                               oio.read_discrete_measure(args.b), args.n_theta)
    print(f"{value:.10g}")
    return 0


def _cmd_geodesic(args):
    ts = np.linspace(0.0, 1.0, args.steps)
    rows = []
    if args.kind == "cdt":
        r1 = _signal_rep(args.a, args.m)
        r2 = _signal_rep(args.b, args.m)
        lo = min(r1.domain[0], r2.domain[0])
        hi = max(r1.domain[1], r2.domain[1])
        grid = Grid1D(lo, hi, args.grid_n)
        for t in ts:
            dens = cdt_inverse(cdt_geodesic_rep(r1, r2, t), grid)
            rows.append(np.concatenate([[t], dens.values]))
        header = "t," + ",".join(f"x{i}" for i in range(args.grid_n))
    elif args.kind == "scdt":
        f1 = oio.read_signed_density(args.a)
        f2 = oio.read_signed_density(args.b)
        lo = min(f1.grid.lo, f2.grid.lo)
        hi = max(f1.grid.hi, f2.grid.hi)
        grid = Grid1D(lo, hi, args.grid_n)
        for t in ts:
            out = scdt_geodesic_positive(f1, f2, t, args.m, grid)
            rows.append(np.concatenate([[t], out.values]))
        header = "t," + ",".join(f"x{i}" for i in range(args.grid_n))
    else:  # lot
        if not args.reference:
            raise _UsageError("--reference is required for --kind lot")
        ref = oio.read_discrete_measure(args.reference)
        e1 = lot_embed(oio.read_discrete_measure(args.a), ref)
        e2 = lot_embed(oio.read_discrete_measure(args.b), ref)
        for t in ts:
            mu = lot_geodesic(e1, e2, t)
            rows.append(np.concatenate([[t], np.ravel(mu.positions), mu.weights]))
        header = "t,positions...,weights..."
    np.savetxt(args.output, np.array(rows), delimiter=",", header=header, comments="")
    return 0


def _cmd_estimate(args):
    from .estimation import estimate_affine

    if args.energy_normalize:
        grid_t, vals_t = oio.read_signal(args.template)
        grid_o, vals_o = oio.read_signal(args.observed)
        template = normalized_energy_density(vals_t, grid_t)
        observed = normalized_energy_density(vals_o, grid_o)
    else:
        template = _read_density(args.template)
        observed = _read_density(args.observed)
    res = estimate_affine(template, observed, m=args.m)
    print(f"omega={res.omega:.10g} tau={res.tau:.10g} a={res.a:.10g} "
          f"b={res.b:.10g} residual={res.residual:.3e}")
    return 0


def _is_image_file(path):
    if str(path).endswith(".pgm"):
        return True
    try:
        return "extent" in oio._read_json(path)
    except FileNotFoundError:
        return False


def _resolve_kind(kind, sample_path):
    # explicit configuration wins; otherwise image datasets default to the
    # sliced transform and signals to the plain one
    if kind is not None:
        return kind
    return "rcdt" if _is_image_file(sample_path) else "cdt"


def _dataset_vectors(manifest, kind, m, n_theta):
    entries = oio.read_manifest(manifest)
    if not entries:
        raise ValueError(f"{manifest}: empty manifest")
    kind = _resolve_kind(kind, entries[0][0])
    vectors, labels = [], []
    for path, label in entries:
        if kind == "rcdt":
            rep = rcdt_forward(_image(path).normalize(), m=m, n_theta=n_theta)
            vectors.append(rep.values.ravel())
        else:
            vectors.append(_signal_rep(path, m).values)
        labels.append(label)
    return np.array(vectors), np.array(labels)


def _cmd_classify_train(args):
    X, y = _dataset_vectors(args.manifest, args.kind, args.m, args.n_theta)
    model = fit_nearest_subspace(X, y, dim=args.dim)
    oio.write_subspace_model(args.model, model)
    return 0


def _cmd_classify_predict(args):
    model = oio.read_subspace_model(args.model)
    if _resolve_kind(args.kind, args.sample) == "rcdt":
        vec = rcdt_forward(_image(args.sample).normalize(), m=args.m,
                           n_theta=args.n_theta).values.ravel()
    else:
        vec = _signal_rep(args.sample, args.m).values
    print(classify(model, vec))
    return 0


def _cmd_tbm_pca(args):
    X, _ = _dataset_vectors(args.manifest, args.kind, args.m, args.n_theta)
    oio.write_tbm_model(args.model, tbm_pca(X, args.modes))
    return 0


def _cmd_tbm_plda(args):
    X, y = _dataset_vectors(args.manifest, args.kind, args.m, args.n_theta)
    oio.write_tbm_model(args.model, tbm_plda(X, y, args.gamma, args.modes))
    return 0


def _cmd_tbm_modes(args):
    model = oio.read_tbm_model(args.model)
    alphas = [float(a) for a in args.alphas.split(",")]
    grid = Grid1D(args.grid_lo, args.grid_hi, args.grid_n)

    def invert(vec):
        rep = CdtRep(QuantileRep(vec, args.grid_lo, args.grid_hi))
        return cdt_inverse(rep, grid)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for sample in visualize_mode(model, args.mode, alphas, invert):
        name = f"mode{args.mode}_alpha{sample.alpha:+g}.csv"
        if not sample.in_range:
            print(f"alpha={sample.alpha:g}: outside the transform range, skipped",
                  file=sys.stderr)
            continue
        oio.write_signal(outdir / name, grid, sample.signal.values)
    return 0


def _cmd_synth(args):
    if args.seed is None:
        raise _UsageError("synth requires --seed")
    rng = np.random.default_rng(args.seed)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.kind == "bump-templates":
        grid = Grid1D(-4.0, 4.0, 1024)
        entries = []
        for cls, template in enumerate(synth.bump_templates(grid)):
            oio.write_signal(outdir / f"template{cls}.csv", grid, template.values)
            omegas, taus = synth.sample_deformations(rng, args.samples)
            for j, (om, ta) in enumerate(zip(omegas, taus)):
                dens = synth.deformed_template(grid, cls, om, ta)
                name = f"class{cls}_sample{j}.csv"
                oio.write_signal(outdir / name, grid, dens.values)
                entries.append((name, cls))
        oio.write_manifest(outdir / "manifest.csv", entries)
    elif args.kind == "gaussian-pair":
        grid = Grid1D(0.0, 1.0, 1024)
        f1, f2 = synth.gaussian_pair(grid)
        oio.write_signal(outdir / "gauss_a.csv", grid, f1.values)
        oio.write_signal(outdir / "gauss_b.csv", grid, f2.values)
    elif args.kind == "disc-phantom":
        img = synth.disc_phantom(args.size)
        _write_image(outdir / ("disc.pgm" if args.format == "pgm" else "disc.csv"),
                     img, args.format)
    else:  # signed-two-bump
        grid = Grid1D(-1.0, 1.0, 1024)
        sig = synth.signed_two_bump_signal(grid)
        oio.write_signal(outdir / "signed_two_bump.csv", grid, sig.values)
        img = synth.signed_two_bump_image(args.size)
        _write_image(
            outdir / ("signed_two_bump_img.pgm" if args.format == "pgm"
                      else "signed_two_bump_img.csv"),
            img, args.format)
    return 0


def _cmd_radon(args):
    sino = radon_forward(_image(args.input), args.n_t, args.n_theta)
    oio.write_sinogram(args.output, sino)
    return 0


def _cmd_iradon(args):
    img = radon_inverse(oio.read_sinogram(args.input), (args.size, args.size),
                        window=args.window)
    _write_image(args.output, img, args.format)
    return 0


_COMMANDS = {
    "transform": _cmd_transform,
    "invert": _cmd_invert,
    "distance": _cmd_distance,
    "geodesic": _cmd_geodesic,
    "radon": _cmd_radon,
    "iradon": _cmd_iradon,
    "estimate": _cmd_estimate,
    "classify-train": _cmd_classify_train,
    "classify-predict": _cmd_classify_predict,
    "tbm-pca": _cmd_tbm_pca,
    "tbm-plda": _cmd_tbm_plda,
    "tbm-modes": _cmd_tbm_modes,
    "synth": _cmd_synth,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"ottk: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError) as exc:
        print(f"ottk: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
