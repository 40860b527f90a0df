import numpy as np
import pytest
from numpy.testing import assert_allclose

from ottk import io as oio
from ottk.cdt import cdt_forward
from ottk.discrete_ot import DiscreteMeasure2D, solve_kantorovich
from ottk.measures import Density1D, DiscreteMeasure1D, Grid1D, SignedDensity1D
from ottk.radon import Image2D, Sinogram
from ottk.rcdt import rcdt_forward, rscdt_forward
from ottk.scdt import scdt_forward
from ottk.subspace import fit_nearest_subspace
from ottk.synth import gaussian_blob_image, signed_two_bump_image, signed_two_bump_signal
from ottk.tbm import tbm_pca


def test_signal_round_trip(tmp_path):
    g = Grid1D(-2.0, 3.0, 101)
    vals = np.sin(g.nodes())
    path = tmp_path / "sig.csv"
    oio.write_signal(path, g, vals)
    g2, v2 = oio.read_signal(path)
    assert g2 == g
    assert_allclose(v2, vals, atol=1e-12)


def test_signal_rejects_nonuniform(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,value\n0.0,1.0\n0.5,1.0\n0.8,1.0\n")
    with pytest.raises(ValueError, match="uniform"):
        oio.read_signal(path)


def test_discrete_measure_round_trip(tmp_path):
    mu1 = DiscreteMeasure1D([0.5, -0.2, 1.0], [0.2, 0.3, 0.5])
    path = tmp_path / "mu.csv"
    oio.write_discrete_measure(path, mu1)
    back = oio.read_discrete_measure(path)
    assert isinstance(back, DiscreteMeasure1D)
    assert_allclose(back.positions, mu1.positions)
    assert_allclose(back.weights, mu1.weights)

    mu2 = DiscreteMeasure2D([[0.0, 1.0], [1.0, -1.0]], [0.4, 0.6])
    path2 = tmp_path / "mu2.csv"
    oio.write_discrete_measure(path2, mu2)
    back2 = oio.read_discrete_measure(path2)
    assert isinstance(back2, DiscreteMeasure2D)
    assert_allclose(back2.positions, mu2.positions)


def test_plan_dump(tmp_path):
    mu = DiscreteMeasure1D([0.0], [1.0])
    nu = DiscreteMeasure1D([-1.0, 1.0], [0.5, 0.5])
    plan = solve_kantorovich(mu, nu)
    path = tmp_path / "plan.csv"
    oio.write_plan(path, plan)
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    assert rows.shape == (2, 3)
    assert_allclose(rows[:, 2].sum(), 1.0)


def test_cdt_rep_round_trip(tmp_path):
    g = Grid1D(0.0, 1.0, 301)
    f = Density1D(g, np.exp(-0.5 * ((g.nodes() - 0.4) / 0.1) ** 2)).normalize()
    rep = cdt_forward(f, 128)
    path = tmp_path / "rep.csv"
    oio.write_cdt_rep(path, rep)
    back = oio.read_cdt_rep(path)
    assert back.m == rep.m
    assert back.domain == rep.domain
    assert_allclose(back.values, rep.values, atol=1e-12)


def test_scdt_rep_round_trip(tmp_path):
    g = Grid1D(-1.0, 1.0, 513)
    rep = scdt_forward(signed_two_bump_signal(g), 128)
    path = tmp_path / "srep.csv"
    oio.write_scdt_rep(path, rep)
    back = oio.read_scdt_rep(path)
    assert back.mass_plus == pytest.approx(rep.mass_plus)
    assert back.mass_minus == pytest.approx(rep.mass_minus)
    assert_allclose(back.q_plus.values, rep.q_plus.values, atol=1e-12)
    assert_allclose(back.q_minus.values, rep.q_minus.values, atol=1e-12)


def test_scdt_rep_round_trip_with_marker(tmp_path):
    g = Grid1D(0.0, 1.0, 257)
    f = SignedDensity1D(g, np.exp(-0.5 * ((g.nodes() - 0.5) / 0.1) ** 2))
    rep = scdt_forward(f, 64)
    assert rep.q_minus is None
    path = tmp_path / "pos.csv"
    oio.write_scdt_rep(path, rep)
    back = oio.read_scdt_rep(path)
    assert back.q_minus is None and back.mass_minus == 0.0


def test_image_csv_round_trip(tmp_path):
    img = gaussian_blob_image(32, sigma=0.3)
    path = tmp_path / "img.csv"
    oio.write_image_csv(path, img)
    back = oio.read_image_csv(path)
    assert back.extent == img.extent
    assert_allclose(back.values, img.values, atol=1e-12)


def test_image_pgm_round_trip(tmp_path):
    img = gaussian_blob_image(24, sigma=0.3)
    path = tmp_path / "img.pgm"
    oio.write_image_pgm(path, img)
    back = oio.read_image_pgm(path)
    assert back.extent == img.extent
    scale = img.values.max() - img.values.min()
    assert np.max(np.abs(back.values - img.values)) <= scale / 65535


def test_sinogram_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    sino = Sinogram(rng.random((17, 9)), 1.5)
    path = tmp_path / "sino.csv"
    oio.write_sinogram(path, sino)
    back = oio.read_sinogram(path)
    assert back.extent == sino.extent
    assert_allclose(back.values, sino.values, atol=1e-12)


def test_rcdt_rep_round_trip(tmp_path):
    img = gaussian_blob_image(48, sigma=0.25)
    rep = rcdt_forward(img, m=32, n_theta=8)
    path = tmp_path / "rcdt.csv"
    oio.write_rcdt_rep(path, rep)
    back = oio.read_rcdt_rep(path)
    assert back.extent == rep.extent
    assert_allclose(back.values, rep.values, atol=1e-12)


def test_rscdt_rep_round_trip(tmp_path):
    img = signed_two_bump_image(48)
    rep = rscdt_forward(img, m=32, n_theta=8)
    path = tmp_path / "rscdt.csv"
    oio.write_rscdt_rep(path, rep)
    back = oio.read_rscdt_rep(path)
    assert_allclose(back.pos_values, rep.pos_values, atol=1e-12)
    assert_allclose(back.neg_values, rep.neg_values, atol=1e-12)
    assert_allclose(back.pos_masses, rep.pos_masses, atol=1e-12)
    assert_allclose(back.neg_masses, rep.neg_masses, atol=1e-12)


def test_subspace_model_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    X = rng.standard_normal((12, 6))
    y = np.repeat([0, 1], 6)
    model = fit_nearest_subspace(X, y, dim=2)
    path = tmp_path / "model.json"
    oio.write_subspace_model(path, model)
    back = oio.read_subspace_model(path)
    assert back.labels == model.labels
    assert_allclose(back.means, model.means, atol=1e-15)
    for b1, b2 in zip(back.bases, model.bases):
        assert_allclose(b1, b2, atol=1e-15)


def test_tbm_model_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    model = tbm_pca(rng.standard_normal((10, 5)), 2)
    path = tmp_path / "tbm.json"
    oio.write_tbm_model(path, model)
    back = oio.read_tbm_model(path)
    assert back.kind == "pca"
    assert_allclose(back.mean, model.mean, atol=1e-15)
    assert_allclose(back.modes, model.modes, atol=1e-15)
    assert_allclose(back.eigenvalues, model.eigenvalues, atol=1e-15)


def test_manifest_round_trip(tmp_path):
    path = tmp_path / "manifest.csv"
    oio.write_manifest(path, [("a.csv", 0), ("sub/b.csv", 1)])
    entries = oio.read_manifest(path)
    assert entries[0][0] == tmp_path / "a.csv"
    assert entries[0][1] == "0"
    assert entries[1][0] == tmp_path / "sub/b.csv"
