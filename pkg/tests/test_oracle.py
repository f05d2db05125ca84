"""Tests of the finite-difference oracle: eigenvalue solves, residual
stencils, the squared-operator spectrum scan, and Simpson quadrature."""

import math

import numpy as np
import pytest

from susy_ladder import dirac as dc
from susy_ladder import nonrel as nr
from susy_ladder import oracle as orc
from susy_ladder.errors import GridTooCoarse, TailNotDecayed
from susy_ladder.params import DiracParams, NRParams

FIG2 = NRParams(1.5, 0.5)
FIG3 = DiracParams(a=1.0, b=2.0, d0=1.0, mbar=0.1)


class TestRadialGrid:
    def test_invariants(self):
        with pytest.raises(ValueError):
            orc.RadialGrid(0.0, 10.0, 128)
        with pytest.raises(ValueError):
            orc.RadialGrid(1.0, 10.0, 128)  # rho_min > 1e-3 rho_max
        with pytest.raises(ValueError):
            orc.RadialGrid(0.001, 10.0, 32)

    def test_spacing_and_points(self):
        g = orc.RadialGrid(0.01, 10.0, 1000)
        assert g.points[0] == pytest.approx(0.01)
        assert g.points[-1] == pytest.approx(10.0)
        assert np.allclose(np.diff(g.points), g.h)

    def test_wall_grid_has_spacing_equal_to_rho_min(self):
        g = orc.wall_grid(100.0, 8192)
        assert g.h == pytest.approx(g.rho_min, rel=1e-12)


class TestScalarEigs:
    def test_fig2_first_levels(self):
        grid = orc.default_grid(FIG2, 3, 4096)
        fd = orc.fd_schrodinger_eigs(FIG2, 3, grid)
        assert fd[0] == pytest.approx(-0.02, abs=1e-5)
        assert fd[1] == pytest.approx(-0.0102041, abs=1e-5)
        assert fd[2] == pytest.approx(-0.00617284, abs=1e-5)
        assert fd == sorted(fd)

    def test_requires_covering_grid(self):
        small = orc.RadialGrid(0.01, 50.0, 1024)
        with pytest.raises(ValueError):
            orc.fd_schrodinger_eigs(FIG2, 3, small)

    def test_grid_too_coarse(self):
        # 64 points over a 440-wide box cannot pin the ground level to 1e-4
        grid = orc.RadialGrid(0.4, 440.0, 64)
        with pytest.raises(GridTooCoarse):
            orc.fd_schrodinger_eigs(FIG2, 1, grid)

    def test_second_order_convergence(self):
        exact = nr.spectrum_radial(FIG2, 0)
        errs = [orc.fd_schrodinger_eigs(
            FIG2, 1, orc.RadialGrid(0.05, 280.0, n), richardson=False)[0] - exact
            for n in (1024, 2048, 4096)]
        r1, r2 = errs[0] / errs[1], errs[1] / errs[2]
        assert 3.5 <= r1 <= 4.5
        assert 3.5 <= r2 <= 4.5


class TestScalarResidual:
    def test_exact_eigenfunction_small_residual(self):
        grid = orc.default_grid(FIG2, 0, 8192)
        f = nr.eigenfunction(FIG2, 0).eval_array(grid.points).real
        rep = orc.residual_scalar(f, nr.spectrum_radial(FIG2, 0), FIG2, grid)
        assert rep.relative_l2 <= 1e-8
        assert rep.operator == "schrodinger"

    def test_all_low_levels_within_bound(self):
        for n in range(4):
            grid = orc.default_grid(FIG2, n, 8192)
            f = nr.eigenfunction(FIG2, n).eval_array(grid.points).real
            rep = orc.residual_scalar(f, nr.spectrum_radial(FIG2, n), FIG2, grid)
            assert rep.relative_l2 <= 1e-7

    def test_energy_offset_linearity(self):
        grid = orc.default_grid(FIG2, 0, 4096)
        f = nr.eigenfunction(FIG2, 0).eval_array(grid.points).real
        rep = orc.residual_scalar(f, nr.spectrum_radial(FIG2, 0) + 0.01, FIG2, grid)
        assert rep.l2_residual == pytest.approx(0.01 * rep.l2_norm, rel=1e-4)

    def test_zero_function(self):
        grid = orc.default_grid(FIG2, 0, 4096)
        rep = orc.residual_scalar(np.zeros(grid.n_points), -0.02, FIG2, grid)
        assert rep.l2_residual == 0.0
        assert rep.max_pointwise_residual == 0.0

    def test_fourth_order_stencil_convergence(self):
        # fixed left endpoint far from the fractional-power origin so the
        # smooth region dominates the residual norm
        exact = nr.spectrum_radial(FIG2, 0)
        rels = []
        for n in (8192, 16384):
            grid = orc.RadialGrid(8.0, 8000.0, n)
            f = nr.eigenfunction(FIG2, 0).eval_array(grid.points).real
            rels.append(orc.residual_scalar(f, exact, FIG2, grid).relative_l2)
        assert 14.0 <= rels[0] / rels[1] <= 18.0


class TestDiracResidual:
    def test_chain_states_small_residual(self):
        # rho_max tailored to each chain's slowest decay rate keeps the
        # stencil error below the target at 8192 points
        for fam, n in (("a", 0), ("a", 1), ("c", 0)):
            grid = orc.default_grid(FIG3, n, 8192)
            phi = dc.eigenfunction_chain(FIG3, n, fam).eval_array(grid.points)
            rep = orc.residual_dirac(phi, dc.family_eigenvalue(FIG3, n, fam),
                                     FIG3, grid)
            assert rep.relative_l2 <= 1e-8

    def test_every_family_confirmed(self):
        # all four families, levels 0..2, on default grids at the module bound
        for fam in ("a", "b", "c", "d"):
            for n in range(3):
                grid = orc.default_grid(FIG3, n, 8192)
                phi = dc.eigenfunction_chain(FIG3, n, fam).eval_array(grid.points)
                rep = orc.residual_dirac(phi, dc.family_eigenvalue(FIG3, n, fam),
                                         FIG3, grid)
                assert rep.relative_l2 <= 1e-7

    def test_degenerate_partner_energy(self):
        # the family-c level-1 chain satisfies the equation at the family-a
        # level-2 eigenvalue, since the two coincide
        grid = orc.default_grid(FIG3, 2, 8192)
        phi = dc.eigenfunction_chain(FIG3, 1, "c").eval_array(grid.points)
        rep = orc.residual_dirac(phi, dc.family_eigenvalue(FIG3, 2, "a"), FIG3, grid)
        assert rep.relative_l2 <= 1e-8

    def test_sign_flip_linearity(self):
        grid = orc.default_grid(FIG3, 1, 4096)
        phi = dc.normalize_spinor(dc.eigenfunction_chain(FIG3, 0, "a")
                                  ).eval_array(grid.points)
        value = dc.family_eigenvalue(FIG3, 0, "a")
        rep = orc.residual_dirac(phi, -value, FIG3, grid)
        assert rep.l2_residual == pytest.approx(2 * abs(value) * rep.l2_norm, rel=1e-3)


class TestSpectrumScan:
    def test_fig3_window(self):
        grid = orc.wall_grid(40.0 * (FIG3.a + 4) / FIG3.b, 16384)
        found = orc.dirac_spectrum_scan(FIG3, (0.9, 2.2), grid)
        levels = [math.hypot(FIG3.mbar, dc.dn(FIG3, n)) for n in range(6)]
        # analytic content of the window: level 0 once, levels 1..3 twice
        expect = sorted([levels[0], levels[1], levels[1], levels[2], levels[2],
                         levels[3], levels[3]])
        assert len(found) == len(expect)
        for got, want in zip(found, expect):
            assert abs(got - want) <= 1e-3

    def test_empty_window(self):
        grid = orc.wall_grid(40.0 * (FIG3.a + 4) / FIG3.b, 8192)
        assert orc.dirac_spectrum_scan(FIG3, (0.0, 0.5), grid) == []

    def test_window_bound(self):
        grid = orc.wall_grid(100.0, 8192)
        with pytest.raises(ValueError):
            orc.dirac_spectrum_scan(FIG3, (0.9, 100.0), grid)

    def test_refinement_stability(self):
        grid = orc.wall_grid(40.0 * (FIG3.a + 4) / FIG3.b, 16384)
        first = orc.dirac_spectrum_scan(FIG3, (0.9, 2.2), grid)
        finer = orc.dirac_spectrum_scan(
            FIG3, (0.9, 2.2), orc.wall_grid(40.0 * (FIG3.a + 4) / FIG3.b, 32768),
            richardson=False)
        assert len(first) == len(finer)
        assert max(abs(x - y) for x, y in zip(first, finer)) <= 1e-4


class TestQuadrature:
    def test_matches_gamma_inner_products(self):
        grid = orc.quadrature_grid(FIG2, 3)
        pts = grid.points
        fs = [nr.eigenfunction(FIG2, n) for n in range(4)]
        for i in range(4):
            for j in range(4):
                exact = fs[i].inner_product(fs[j])
                approx = orc.quad_inner(fs[i].eval_array(pts),
                                        fs[j].eval_array(pts), grid)
                scale = fs[i].norm() * fs[j].norm()
                assert abs(exact - approx) <= 1e-8 * scale

    def test_self_inner_real_nonnegative(self):
        grid = orc.quadrature_grid(FIG2, 1, 4096)
        f = nr.eigenfunction(FIG2, 1).eval_array(grid.points)
        val = orc.quad_inner(f, f, grid)
        assert abs(val.imag) <= 1e-15 * abs(val)
        assert val.real > 0

    def test_tail_guard(self):
        grid = orc.RadialGrid(1e-4 * 8.0, 8.0, 1024)  # far too short for the tail
        f = nr.eigenfunction(FIG2, 0).eval_array(grid.points)
        with pytest.raises(TailNotDecayed):
            orc.quad_inner(f, f, grid)

    def test_simpson_beats_trapezoid(self):
        # orders h^4 vs h^2 on exp(-rho), compared with the segment-exact
        # integral so the missing [0, rho_min] strip cancels out
        errs_s, errs_t = [], []
        for n in (513, 1025):
            grid = orc.RadialGrid(1e-5 * 60.0, 60.0, n)
            exact = math.exp(-grid.rho_min) - math.exp(-grid.rho_max)
            half = np.exp(-grid.points / 2.0)
            simpson_val = orc.quad_inner(half, half, grid).real
            trapz_val = float(np.trapezoid(half * half, dx=grid.h))
            errs_s.append(abs(simpson_val - exact))
            errs_t.append(abs(trapz_val - exact))
        assert 12.0 < errs_s[0] / errs_s[1] < 20.0  # ~16 for h^4
        assert 3.0 < errs_t[0] / errs_t[1] < 5.0    # ~4 for h^2
