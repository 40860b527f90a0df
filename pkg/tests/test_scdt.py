import numpy as np
import pytest
from numpy.testing import assert_allclose

from ottk.cdt import cdt_forward
from ottk.measures import Density1D, Grid1D, SignedDensity1D
from ottk.scdt import (
    ScdtRep,
    d_scdt,
    scdt_forward,
    scdt_geodesic_positive,
    scdt_geodesic_positive_rep,
    scdt_inverse,
)


def square_wave(n=2001):
    """The two-block signed density +1 on [-1, 0], -1 on [0, 1]."""
    g = Grid1D(-1.0, 1.0, n)
    x = g.nodes()
    vals = np.where(x < 0, 1.0, -1.0)
    vals[np.isclose(x, 0.0)] = 0.0
    return SignedDensity1D(g, vals)


def gaussian(grid, center, sigma, amp=1.0):
    x = grid.nodes()
    return amp * np.exp(-0.5 * ((x - center) / sigma) ** 2)


class TestForward:
    def test_square_wave_closed_form(self):
        m = 512
        rep = scdt_forward(square_wave(), m)
        xi = (np.arange(m) + 0.5) / m
        # uniform on [-1, 0] has quantile xi - 1; uniform on [0, 1] has xi
        assert np.max(np.abs(rep.q_plus.values - (xi - 1.0))) <= 2.5 / 2001
        assert np.max(np.abs(rep.q_minus.values - xi)) <= 2.5 / 2001
        assert rep.mass_plus == pytest.approx(1.0, abs=2e-3)
        assert rep.mass_minus == pytest.approx(1.0, abs=2e-3)

    def test_zero_density_all_markers(self):
        g = Grid1D(0.0, 1.0, 65)
        rep = scdt_forward(SignedDensity1D(g, np.zeros(65)), 32)
        assert rep.q_plus is None and rep.mass_plus == 0.0
        assert rep.q_minus is None and rep.mass_minus == 0.0

    def test_nonnegative_input_reduces_to_cdt(self):
        g = Grid1D(0.0, 1.0, 513)
        vals = gaussian(g, 0.5, 0.1)
        dens = Density1D(g, vals).normalize()
        rep = scdt_forward(SignedDensity1D(g, dens.values), 128)
        assert rep.q_minus is None and rep.mass_minus == 0.0
        assert rep.mass_plus == pytest.approx(1.0, abs=1e-9)
        assert_allclose(rep.q_plus.values, cdt_forward(dens, 128).values, atol=1e-12)

    def test_marker_invariant_enforced(self):
        with pytest.raises(ValueError, match="zero marker"):
            ScdtRep(None, 1.0, None, 0.0)


class TestInverse:
    def test_zero_rep_gives_zero(self):
        rep = ScdtRep(None, 0.0, None, 0.0)
        out = scdt_inverse(rep, Grid1D(0.0, 1.0, 33))
        assert_allclose(out.values, 0.0)

    def test_scaled_uniform(self):
        from ottk.cdt import CdtRep
        from ottk.measures import QuantileRep

        m = 128
        xi = (np.arange(m) + 0.5) / m
        rep = ScdtRep(CdtRep(QuantileRep(xi, 0.0, 1.0)), 2.0, None, 0.0)
        out = scdt_inverse(rep, Grid1D(0.0, 1.0, 129))
        assert_allclose(out.values, 2.0, atol=1e-9)

    def test_round_trip_square_wave(self):
        f = square_wave(1025)
        rep = scdt_forward(f, 1024)
        back = scdt_inverse(rep, f.grid)
        err = np.trapezoid(np.abs(back.values - f.values), dx=f.grid.spacing)
        assert err <= 1e-2

    def test_round_trip_smooth_signed(self):
        g = Grid1D(-2.0, 2.0, 1025)
        vals = gaussian(g, -0.8, 0.25, 1.3) - gaussian(g, 0.9, 0.3, 0.7)
        f = SignedDensity1D(g, vals)
        back = scdt_inverse(scdt_forward(f, 1024), g)
        err = np.trapezoid(np.abs(back.values - vals), dx=g.spacing)
        assert err <= 1e-2

    def test_overlapping_parts_warn(self):
        from ottk.cdt import CdtRep
        from ottk.measures import QuantileRep

        m = 64
        xi = (np.arange(m) + 0.5) / m
        same = CdtRep(QuantileRep(xi, 0.0, 1.0))
        rep = ScdtRep(same, 1.0, same, 1.0)
        with pytest.warns(UserWarning, match="overlap"):
            scdt_inverse(rep, Grid1D(0.0, 1.0, 65))


class TestDistance:
    def test_identical(self):
        rep = scdt_forward(square_wave(), 256)
        assert d_scdt(rep, rep) == 0.0

    def test_flip_of_square_wave_is_sqrt2(self):
        f = square_wave()
        neg = SignedDensity1D(f.grid, -f.values)
        r1 = scdt_forward(f, 1024)
        r2 = scdt_forward(neg, 1024)
        assert d_scdt(r1, r2) == pytest.approx(np.sqrt(2.0), abs=1e-3)

    def test_nonnegative_reduces_to_cdt_plus_mass(self):
        from ottk.cdt import d_cdt

        g = Grid1D(0.0, 1.0, 513)
        f1 = SignedDensity1D(g, 2.0 * gaussian(g, 0.4, 0.1))
        f2 = SignedDensity1D(g, 0.5 * gaussian(g, 0.6, 0.15))
        r1 = scdt_forward(f1, 256)
        r2 = scdt_forward(f2, 256)
        expected = np.sqrt(
            d_cdt(r1.q_plus, r2.q_plus) ** 2 + (r1.mass_plus - r2.mass_plus) ** 2
        )
        assert d_scdt(r1, r2) == pytest.approx(expected, abs=1e-12)

    def test_metric_axioms(self):
        rng = np.random.default_rng(3)
        g = Grid1D(-1.0, 1.0, 257)
        reps = []
        for _ in range(9):
            vals = rng.standard_normal(3) @ np.array(
                [gaussian(g, c, 0.2) for c in (-0.5, 0.0, 0.5)]
            )
            reps.append(scdt_forward(SignedDensity1D(g, vals), 128))
        for a, b, c in zip(reps[::3], reps[1::3], reps[2::3]):
            assert d_scdt(a, b) == d_scdt(b, a)
            assert d_scdt(a, c) <= d_scdt(a, b) + d_scdt(b, c) + 1e-12


class TestSymmetry:
    def test_increasing_map_acts_by_inverse_composition(self):
        # transforming the g-deformed density composes each part's quantiles
        # with the inverse map and keeps the masses
        rng = np.random.default_rng(8)
        g = Grid1D(0.0, 1.0, 2049)
        x = g.nodes()
        vals = gaussian(g, 0.3, 0.08, 1.0) - gaussian(g, 0.7, 0.1, 0.6)
        f = SignedDensity1D(g, vals)
        base = scdt_forward(f, 256)

        for a, b in ((0.5, 0.1), (1.7, -0.2)):
            # deformed density g'*(f o g) with g(x) = a*x + b, sampled where
            # g maps back into the base domain
            lo, hi = (0.0 - b) / a, (1.0 - b) / a
            g2 = Grid1D(lo, hi, 2049)
            y = g2.nodes()
            deformed = SignedDensity1D(g2, a * np.interp(a * y + b, x, vals))
            rep = scdt_forward(deformed, 256)
            inv = lambda v: (v - b) / a
            assert np.max(np.abs(rep.q_plus.values - inv(base.q_plus.values))) <= 2 * g2.spacing
            assert np.max(np.abs(rep.q_minus.values - inv(base.q_minus.values))) <= 2 * g2.spacing
            assert rep.mass_plus == pytest.approx(base.mass_plus, abs=1e-6)
            assert rep.mass_minus == pytest.approx(base.mass_minus, abs=1e-6)

    def test_random_monotone_map_action(self):
        # non-affine strictly increasing g on [0, 1]: the deformed density
        # g'*(f o g) transforms to (g^-1 o q, same masses)
        g = Grid1D(0.0, 1.0, 4097)
        y = g.nodes()
        gv = y + 0.15 * np.sin(np.pi * y)
        gprime = 1.0 + 0.15 * np.pi * np.cos(np.pi * y)
        vals = gaussian(g, 0.4, 0.08, 1.0) - gaussian(g, 0.75, 0.06, 0.5)
        base = scdt_forward(SignedDensity1D(g, vals), 256)

        deformed = SignedDensity1D(g, gprime * np.interp(gv, y, vals))
        rep = scdt_forward(deformed, 256)
        inv_pos = np.interp(base.q_plus.values, gv, y)
        inv_neg = np.interp(base.q_minus.values, gv, y)
        assert np.max(np.abs(rep.q_plus.values - inv_pos)) <= 2 * g.spacing
        assert np.max(np.abs(rep.q_minus.values - inv_neg)) <= 2 * g.spacing
        assert rep.mass_plus == pytest.approx(base.mass_plus, abs=1e-6)
        assert rep.mass_minus == pytest.approx(base.mass_minus, abs=1e-6)

    def test_mutual_singularity_after_round_trip(self):
        f = square_wave(2049)
        rep = scdt_forward(f, 1024)
        back = scdt_inverse(rep, f.grid)
        pos = np.maximum(back.values, 0.0)
        neg = np.maximum(-back.values, 0.0)
        overlap = np.trapezoid(np.minimum(pos, neg), dx=f.grid.spacing)
        assert overlap <= 1e-6


class TestGeodesic:
    def test_endpoints_and_mass_interpolation(self):
        g = Grid1D(0.0, 1.0, 513)
        f1 = SignedDensity1D(g, 1.0 * gaussian(g, 0.3, 0.06))
        f2 = SignedDensity1D(g, 3.0 * gaussian(g, 0.7, 0.09))
        mid = scdt_geodesic_positive(f1, f2, 0.5, 512, g)
        m1 = f1.total_variation()
        m2 = f2.total_variation()
        assert mid.total_variation() == pytest.approx(0.5 * (m1 + m2), rel=1e-9)
        t0 = scdt_geodesic_positive(f1, f2, 0.0, 512, g)
        err = np.trapezoid(np.abs(t0.values - f1.values), dx=g.spacing)
        assert err <= 1e-2 * m1

    def test_constant_speed(self):
        g = Grid1D(0.0, 1.0, 513)
        rng = np.random.default_rng(6)
        f1 = SignedDensity1D(g, gaussian(g, 0.35, 0.07, rng.uniform(0.5, 2)))
        f2 = SignedDensity1D(g, gaussian(g, 0.6, 0.1, rng.uniform(0.5, 2)))
        d_full = d_scdt(scdt_forward(f1, 512), scdt_forward(f2, 512))
        reps = {
            t: scdt_geodesic_positive_rep(f1, f2, t, 512)
            for t in (0.25, 0.5, 0.75)
        }
        for s, t in ((0.25, 0.5), (0.25, 0.75), (0.5, 0.75)):
            assert d_scdt(reps[s], reps[t]) == pytest.approx(
                abs(t - s) * d_full, abs=1e-6
            )

    def test_signed_input_rejected(self):
        f = square_wave()
        neg = SignedDensity1D(f.grid, -f.values)
        with pytest.raises(ValueError, match="nonnegative"):
            scdt_geodesic_positive(f, neg, 0.5, 128, f.grid)

    def test_zero_input_rejected(self):
        g = Grid1D(0.0, 1.0, 65)
        zero = SignedDensity1D(g, np.zeros(65))
        pos = SignedDensity1D(g, gaussian(g, 0.5, 0.1))
        with pytest.raises(ValueError, match="nonnegative"):
            scdt_geodesic_positive(zero, pos, 0.5, 64, g)
