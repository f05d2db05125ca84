"""Finite-difference cross-checks, independent of the ladder construction.

This module consumes only parameter records and sampled function values. It
discretizes the scalar radial operator directly and probes the matrix
problem through the squared operator, whose two decoupled scalar channels

    -u'' + [cf/rho^2 - 2b/rho + b^2/a^2 + d0^2 + mbar^2] u = E^2 u,
    cf = a(a-1)  (components 1 and 3),   cf = a(a+1)  (components 2 and 4),

avoid the spurious eigenbranches that naive first-order discretizations
produce. Each doubled spinor channel is solved once, so reported
multiplicities count +/- energy pairs once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import eigh_tridiagonal

from .errors import GridTooCoarse, TailNotDecayed
from .params import DiracParams, NRParams

RICHARDSON_SHIFT = 1e-4


@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid on [rho_min, rho_max] with Dirichlet ends."""

    rho_min: float
    rho_max: float
    n_points: int

    def __post_init__(self):
        if not 0 < self.rho_min < self.rho_max:
            raise ValueError("need 0 < rho_min < rho_max")
        if self.rho_min > 1e-3 * self.rho_max:
            raise ValueError("rho_min must not exceed 1e-3 * rho_max")
        if self.n_points < 64:
            raise ValueError("need at least 64 grid points")

    @property
    def h(self) -> float:
        return (self.rho_max - self.rho_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.rho_min, self.rho_max, self.n_points)


def default_grid(params, n_max: int, n_points: int = 8192) -> RadialGrid:
    """Grid capturing both the rho -> 0 region and the slowest tail up to level n_max.

    rho_min sits at 1e-3 * rho_max: small enough for the centrifugal region,
    large enough that the five-point stencil never straddles the fractional
    power singularity at the origin.
    """
    rho_max = 40.0 * (params.a + n_max + 1) / params.b
    return RadialGrid(1e-3 * rho_max, rho_max, n_points)


def quadrature_grid(params, n_max: int, n_points: int = 16384) -> RadialGrid:
    """Grid for Simpson inner products: rho_min small enough (1e-6 * rho_max)
    that the missed strip [0, rho_min] is far below the 1e-8 agreement target
    even for integrands growing like rho^2 at the origin."""
    rho_max = 40.0 * (params.a + n_max + 1) / params.b
    return RadialGrid(1e-6 * rho_max, rho_max, n_points)


def wall_grid(rho_max: float, n_points: int) -> RadialGrid:
    """Grid whose implicit Dirichlet wall falls exactly on rho = 0.

    With rho_min equal to the spacing, the boundary row of the discretized
    operator enforces u(0) = 0. This matters for eigensolves whose lowest
    channel has no centrifugal barrier (cf = 0): there the eigenvalue shifts
    linearly with the wall position, and a wall at 1e-4 * rho_max would move
    levels by orders of magnitude more than the target accuracy.
    """
    return RadialGrid(rho_max / n_points, rho_max, n_points)


def _is_wall_grid(grid: RadialGrid) -> bool:
    return abs(grid.rho_min - grid.h) <= 1e-9 * grid.h


def _doubled(grid: RadialGrid) -> RadialGrid:
    if _is_wall_grid(grid):
        return wall_grid(grid.rho_max, 2 * grid.n_points)
    return RadialGrid(grid.rho_min, grid.rho_max, 2 * grid.n_points)


@dataclass(frozen=True)
class ResidualReport:
    """Pointwise and L2 residual norms of a trial eigenpair on a grid."""

    max_pointwise_residual: float
    l2_residual: float
    l2_norm: float
    grid: RadialGrid
    operator: str
    eigenvalue: float

    @property
    def relative_l2(self) -> float:
        return self.l2_residual / self.l2_norm


# -- scalar problem ----------------------------------------------------------


def _scalar_tridiag(params: NRParams, grid: RadialGrid):
    pts = grid.points
    h = grid.h
    v = params.a * (params.a + 1) / (2.0 * pts ** 2) - params.b / pts
    return 1.0 / h ** 2 + v, np.full(grid.n_points - 1, -0.5 / h ** 2)


def _scalar_lowest(params: NRParams, count: int, grid: RadialGrid) -> np.ndarray:
    d, e = _scalar_tridiag(params, grid)
    return eigh_tridiagonal(d, e, eigvals_only=True, select="i",
                            select_range=(0, count - 1))


def fd_schrodinger_eigs(params: NRParams, n_level_count: int, grid: RadialGrid,
                        richardson: bool = True) -> list[float]:
    """Lowest eigenvalues of the discretized scalar operator, ascending.

    The symmetric tridiagonal matrix is (-1/2) * second difference plus the
    diagonal potential, with Dirichlet ends. When richardson is set, the
    ground eigenvalue is re-solved at double resolution and a shift above
    1e-4 raises GridTooCoarse. Disable it for deliberate convergence studies.
    """
    needed = 40.0 * (params.a + n_level_count + 1) / params.b
    if grid.rho_max < needed:
        raise ValueError(
            f"rho_max = {grid.rho_max} does not cover the turning region; "
            f"need at least {needed}")
    evs = _scalar_lowest(params, n_level_count, grid)
    if richardson:
        refined = _scalar_lowest(params, 1, _doubled(grid))
        shift = abs(evs[0] - refined[0])
        if shift > RICHARDSON_SHIFT:
            raise GridTooCoarse(
                f"ground eigenvalue moved by {shift:.3e} on refinement")
    return [float(x) for x in evs]


def residual_scalar(f: np.ndarray, energy: float, params: NRParams,
                    grid: RadialGrid) -> ResidualReport:
    """Residual of (-1/2) f'' + V0 f - E f using the five-point second
    derivative (fourth order), restricted to the stencil-valid interior."""
    f = np.asarray(f)
    h = grid.h
    pts = grid.points
    inner = slice(2, grid.n_points - 2)
    d2 = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2] + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    v = params.a * (params.a + 1) / (2.0 * pts[inner] ** 2) - params.b / pts[inner]
    r = -0.5 * d2 + (v - energy) * f[inner]
    return ResidualReport(
        max_pointwise_residual=float(np.max(np.abs(r))),
        l2_residual=float(np.sqrt(h * np.sum(np.abs(r) ** 2))),
        l2_norm=float(np.sqrt(h * np.sum(np.abs(f[inner]) ** 2))),
        grid=grid, operator="schrodinger", eigenvalue=energy)


# -- matrix problem ----------------------------------------------------------


def residual_dirac(phi: np.ndarray, energy: float, params: DiracParams,
                   grid: RadialGrid) -> ResidualReport:
    """Residual of the first-order 4x4 operator on a sampled spinor, using
    fourth-order central first-derivative stencils per component."""
    phi = np.asarray(phi)
    if phi.shape != (4, grid.n_points):
        raise ValueError(f"expected a (4, {grid.n_points}) sample array")
    h = grid.h
    pts = grid.points
    inner = slice(2, grid.n_points - 2)
    d1 = (phi[:, :-4] - 8 * phi[:, 1:-3] + 8 * phi[:, 3:-1] - phi[:, 4:]) / (12 * h)
    w = params.a / pts[inner] - params.b / params.a
    alpha1 = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
                      dtype=complex)
    alpha2 = np.array([[0, 0, 0, -1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]])
    alpha3 = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]],
                      dtype=complex)
    beta = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)
    applied = (-1j * (alpha1 @ d1) + w * (alpha2 @ phi[:, inner])
               + params.d0 * (alpha3 @ phi[:, inner])
               + params.mbar * (beta @ phi[:, inner]))
    r = applied - energy * phi[:, inner]
    return ResidualReport(
        max_pointwise_residual=float(np.max(np.abs(r))),
        l2_residual=float(np.sqrt(h * np.sum(np.abs(r) ** 2))),
        l2_norm=float(np.sqrt(h * np.sum(np.abs(phi[:, inner]) ** 2))),
        grid=grid, operator="dirac", eigenvalue=energy)


def _channel_tridiag(params: DiracParams, cf: float, grid: RadialGrid):
    pts = grid.points
    h = grid.h
    const = (params.b / params.a) ** 2 + params.d0 ** 2 + params.mbar ** 2
    v = cf / pts ** 2 - 2.0 * params.b / pts + const
    return 2.0 / h ** 2 + v, np.full(grid.n_points - 1, -1.0 / h ** 2)


def _channel_eigs_in(params: DiracParams, cf: float, grid: RadialGrid,
                     lo: float, hi: float) -> np.ndarray:
    d, e = _channel_tridiag(params, cf, grid)
    return eigh_tridiagonal(d, e, eigvals_only=True, select="v",
                            select_range=(lo, hi))


def dirac_spectrum_scan(params: DiracParams, window: tuple[float, float],
                        grid: RadialGrid, richardson: bool = True) -> list[float]:
    """Eigenvalue magnitudes of the matrix problem inside a window, from the
    squared operator's two scalar channels.

    Components 1/3 and 2/4 of the squared operator are identical pairs; each
    pair is solved once, so a magnitude's multiplicity here counts each +/-
    energy pair of the first-order problem a single time. Use a wall grid:
    the barrier-free channel is sensitive to the Dirichlet wall position.

    The stability check re-solves at double resolution and raises
    GridTooCoarse when any reported magnitude moves by more than 1e-4.
    """
    lo, hi = window
    if not 0.0 <= lo < hi:
        raise ValueError("window must satisfy 0 <= lo < hi")
    bound = 1.5 * (params.mbar + abs(dn(params, 3)))
    if hi > bound:
        raise ValueError(f"window top {hi} exceeds the desk-scale bound {bound}")
    mags = _scan_once(params, grid, lo, hi)
    if richardson:
        refined = _scan_once(params, _doubled(grid), lo, hi)
        if len(refined) != len(mags):
            raise GridTooCoarse("refinement changed the eigenvalue count in window")
        shift = max((abs(x - y) for x, y in zip(mags, refined)), default=0.0)
        if shift > RICHARDSON_SHIFT:
            raise GridTooCoarse(f"a magnitude moved by {shift:.3e} on refinement")
    return mags


def _scan_once(params: DiracParams, grid: RadialGrid,
               lo: float, hi: float) -> list[float]:
    found = []
    for cf in (params.a * (params.a - 1), params.a * (params.a + 1)):
        sq = _channel_eigs_in(params, cf, grid, lo * lo, hi * hi)
        found.extend(math.sqrt(x) for x in sq if x > 0)
    return sorted(found)


def dn(params: DiracParams, n: int) -> float:
    # Same closed form as the solver module, restated here so the oracle
    # depends only on the parameter record.
    dsq = (params.d0 ** 2 + n * (2 * params.a + n) * params.b ** 2
           / (params.a ** 2 * (params.a + n) ** 2))
    return (-1.0 if params.d0 < 0 else 1.0) * math.sqrt(dsq)


# -- quadrature --------------------------------------------------------------


def quad_inner(f: np.ndarray, g: np.ndarray, grid: RadialGrid) -> complex:
    """Composite-Simpson inner product of sampled functions, conjugating f.

    Requires the integrand to have decayed at rho_max (relative 1e-16), since
    the quadrature cannot see past the grid.
    """
    prod = np.conjugate(np.asarray(f)) * np.asarray(g)
    peak = float(np.max(np.abs(prod)))
    if peak > 0 and abs(prod[-1]) > 1e-16 * peak:
        raise TailNotDecayed(
            f"integrand at rho_max is {abs(prod[-1]) / peak:.2e} of its peak")
    return complex(simpson(prod, dx=grid.h))
