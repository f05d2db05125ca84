"""One-shot verification battery aggregating the module invariants.

Each check returns a CheckResult; the CLI renders them and maps any failure
to a nonzero exit status. Randomized checks draw from a fixed seed so runs
are reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dirac as dc
from . import nonrel as nr
from . import oracle as orc
from .expalg import ExpoPoly
from .params import DiracParams, NRParams, PhysicalParams

SEED = 20121028


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_poly(rng, a: float, b: float, n_terms: int = 3) -> ExpoPoly:
    total = ExpoPoly.zero(a, b)
    for _ in range(n_terms):
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        total = total + ExpoPoly.term(a, b, coeff, mu=1,
                                      j=int(rng.integers(0, 4)),
                                      k=int(rng.integers(0, 4)))
    return total


def _random_spinor(rng, a: float, b: float, size: int) -> dc.SpinorFn:
    return dc.SpinorFn(tuple(_random_poly(rng, a, b) for _ in range(size)))


def _random_nr(rng) -> NRParams:
    return NRParams(a=float(rng.uniform(0.4, 2.5)), b=float(rng.uniform(0.4, 2.5)))


def _random_dirac(rng) -> DiracParams:
    d0 = float(rng.uniform(0.1, 1.5)) * (1.0 if rng.uniform() < 0.5 else -1.0)
    return DiracParams(a=float(rng.uniform(0.5, 2.0)),
                       b=float(rng.uniform(0.4, 2.0)),
                       d0=d0, mbar=float(rng.uniform(0.0, 1.5)))


def _random_phys(rng) -> PhysicalParams:
    sign = 1.0 if rng.uniform() < 0.5 else -1.0
    hbar = float(rng.uniform(0.5, 2.0))
    return PhysicalParams(
        hbar=hbar, m=float(rng.uniform(0.5, 2.0)), c=float(rng.uniform(0.5, 2.0)),
        e=float(rng.uniform(0.5, 2.0)),
        k=sign * float(rng.uniform(0.7, 2.0)) * hbar,
        pz=sign * float(rng.uniform(0.2, 2.0)),
        ell=float(rng.uniform(-2.0, 2.0)))


def check_riccati(tol: float, draws: int = 8) -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(draws):
        p = _random_nr(rng)
        for n in range(1, 5):
            worst = max(worst, nr.riccati_residual(p, n).max_abs_coeff())
    return CheckResult("nr-riccati-residual", worst <= tol,
                       f"max coefficient {worst:.3e} (tol {tol:.1e})")


def check_nr_factorization(tol: float, draws: int = 6) -> CheckResult:
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(draws):
        p = _random_nr(rng)
        f = _random_poly(rng, p.a, p.b)
        for n in range(1, 5):
            up = nr.ladder(p, n, "creation")
            down = nr.ladder(p, n, "annihilation")
            eps = nr.factorization_energy(p, n)
            r1 = (nr.apply_hamiltonian(p, n - 1, f)
                  - down.apply(up.apply(f)) - f.scale(eps))
            r2 = (nr.apply_hamiltonian(p, n, f)
                  - up.apply(down.apply(f)) - f.scale(eps))
            worst = max(worst, r1.max_abs_coeff(), r2.max_abs_coeff())
    return CheckResult("nr-factorization", worst <= tol,
                       f"max coefficient {worst:.3e} (tol {tol:.1e})")


def check_nr_intertwining(tol: float, draws: int = 6) -> CheckResult:
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(draws):
        p = _random_nr(rng)
        f = _random_poly(rng, p.a, p.b)
        for n in range(0, 4):
            up = nr.ladder(p, n + 1, "creation")
            r = (nr.apply_hamiltonian(p, n + 1, up.apply(f))
                 - up.apply(nr.apply_hamiltonian(p, n, f)))
            worst = max(worst, r.max_abs_coeff())
    return CheckResult("nr-intertwining", worst <= tol,
                       f"max coefficient {worst:.3e} (tol {tol:.1e})")


def check_nr_eigen(params: NRParams, tol: float) -> CheckResult:
    worst = 0.0
    for n in range(0, 7):
        f = nr.eigenfunction(params, n)
        r = nr.apply_hamiltonian(params, 0, f) - f.scale(nr.spectrum_radial(params, n))
        worst = max(worst, r.max_abs_coeff() / max(1.0, f.max_abs_coeff()))
    return CheckResult("nr-eigen-equations", worst <= tol,
                       f"levels 0..6, max relative coefficient {worst:.3e}")


def check_nr_nodes(params: NRParams) -> CheckResult:
    counts = [len(nr.eigenfunction_nodes(params, n)) for n in range(4)]
    ok = counts == [0, 1, 2, 3]
    return CheckResult("nr-node-counts", ok, f"interior zeros {counts} expected [0, 1, 2, 3]")


def check_nr_orthogonality() -> CheckResult:
    return _gram_check("nr-orthogonality", _nr_gram(NRParams(1.5, 0.5), 5))


def _nr_gram(params: NRParams, count: int):
    fs = [nr.eigenfunction(params, n) for n in range(count)]
    return [[fs[i].inner_product(fs[j]).real for j in range(count)]
            for i in range(count)]


def _gram_check(name: str, gram) -> CheckResult:
    count = len(gram)
    worst = 0.0
    for i in range(count):
        for j in range(count):
            if i != j:
                rel = abs(gram[i][j]) / math.sqrt(gram[i][i] * gram[j][j])
                worst = max(worst, rel)
    return CheckResult(name, worst <= 1e-9,
                       f"max relative off-diagonal {worst:.3e} (tol 1e-09)")


def check_nr_fd(params: NRParams, n_points: int) -> CheckResult:
    grid = orc.default_grid(params, 3, n_points)
    fd = orc.fd_schrodinger_eigs(params, 3, grid)
    worst = max(abs(fd[n] - nr.spectrum_radial(params, n)) for n in range(3))
    return CheckResult("nr-fd-eigenvalues", worst <= 1e-5,
                       f"max |fd - analytic| {worst:.3e} (tol 1e-05)")


def check_dirac_kernels(tol: float, draws: int = 8) -> CheckResult:
    rng = np.random.default_rng(SEED + 3)
    worst = 0.0
    for _ in range(draws):
        p = _random_dirac(rng)
        for n in range(0, 5):
            bd = dc.b_dagger(p, n)
            worst = max(worst,
                        bd.apply(dc.kernel_chi(p, n)).max_abs_coeff(),
                        bd.apply(dc.kernel_xi(p, n)).max_abs_coeff())
            ad = dc.a_dagger(p, n)
            for fam in dc.FAMILIES:
                vec, _ = dc.eigenvector(p, n, fam)
                worst = max(worst, ad.apply(vec).max_abs_coeff())
    return CheckResult("dirac-kernel-annihilation", worst <= tol,
                       f"max coefficient {worst:.3e} (tol {tol:.1e})")


def check_dirac_intertwining(tol: float, draws: int = 5) -> CheckResult:
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(draws):
        p = _random_dirac(rng)
        f2 = _random_spinor(rng, p.a, p.b, 2)
        f4 = _random_spinor(rng, p.a, p.b, 4)
        for n in range(0, 4):
            bd = dc.b_dagger(p, n)
            r2 = (dc.h_operator(p, n + 1).apply(bd.apply(f2))
                  - bd.apply(dc.h_operator(p, n).apply(f2)))
            ad = dc.a_dagger(p, n)
            r4 = (dc.big_hamiltonian(p, n + 1).apply(ad.apply(f4))
                  - ad.apply(dc.big_hamiltonian(p, n).apply(f4)))
            worst = max(worst, r2.max_abs_coeff(), r4.max_abs_coeff())
    return CheckResult("dirac-intertwining", worst <= tol,
                       f"max coefficient {worst:.3e} (tol {tol:.1e})")


def check_dirac_eigen(params: DiracParams, tol: float) -> CheckResult:
    worst = 0.0
    for n in range(0, 4):
        for fam in dc.FAMILIES:
            chain = dc.eigenfunction_chain(params, n, fam)
            value = dc.family_eigenvalue(params, n, fam)
            r = dc.big_hamiltonian(params, 0).apply(chain) - chain.scale(value)
            scale = max(1.0, chain.max_abs_coeff())
            worst = max(worst, r.max_abs_coeff() / scale)
    return CheckResult("dirac-eigen-equations", worst <= tol,
                       f"four families, levels 0..3, max relative coefficient {worst:.3e}")


def check_degeneracy(params: DiracParams) -> CheckResult:
    ok = all(dc.family_eigenvalue(params, n, "c") == dc.family_eigenvalue(params, n + 1, "a")
             and dc.family_eigenvalue(params, n, "d") == dc.family_eigenvalue(params, n + 1, "b")
             for n in range(0, 5))
    return CheckResult("dirac-degeneracy-ladder", ok,
                       "family c level n matches family a level n+1 exactly (and d/b)")


def check_spectrum_identity(draws: int = 50) -> CheckResult:
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for _ in range(draws):
        phys = _random_phys(rng)
        p = phys.to_dirac()
        for n in range(0, 6):
            for sign in (1, -1):
                closed = dc.spectrum_dirac(phys, n, sign)
                via_dn = sign * phys.c * phys.hbar * math.hypot(p.mbar, dc.dn(p, n))
                worst = max(worst, abs(closed - via_dn) / abs(closed))
        pn = phys.to_nr()
        for n in range(0, 6):
            direct = nr.spectrum_physical(phys, n)
            via_d = (phys.hbar ** 2 / phys.m) * nr.spectrum_radial(pn, n) \
                + phys.pz ** 2 / (2 * phys.m)
            worst = max(worst, abs(direct - via_d) / abs(direct))
    return CheckResult("spectrum-identities", worst <= 1e-12,
                       f"max relative mismatch {worst:.3e} (tol 1e-12)")


def check_xi_superpotential(params: DiracParams) -> CheckResult:
    worst = max(dc.superpotential_matrix_residual(params, n, [0.5, 1.0, 2.0, 5.0])
                for n in (0, 1))
    return CheckResult("xi-superpotential-identity", worst <= 1e-8,
                       f"max Frobenius residual {worst:.3e} (tol 1e-08)")


def check_dirac_scan(params: DiracParams, n_points: int) -> CheckResult:
    levels = [math.hypot(params.mbar, dc.dn(params, n)) for n in range(8)]
    lo = 0.95 * levels[0]
    hi = 0.5 * (levels[2] + levels[3])
    grid = orc.wall_grid(40.0 * (params.a + 4) / params.b, n_points)
    found = orc.dirac_spectrum_scan(params, (lo, hi), grid)
    expect = sorted([levels[0], levels[1], levels[1], levels[2], levels[2]])
    ok = len(found) == len(expect) and all(
        abs(x - y) <= 1e-3 for x, y in zip(found, expect))
    return CheckResult(
        "dirac-fd-scan", ok,
        f"window ({lo:.4f}, {hi:.4f}): found {len(found)} magnitudes, "
        f"multiplicities 1,2,2 expected")


def check_gamma_vs_quadrature(params: NRParams) -> CheckResult:
    grid = orc.quadrature_grid(params, 3)
    pts = grid.points
    fs = [nr.eigenfunction(params, n) for n in range(3)]
    samples = [f.eval_array(pts) for f in fs]
    worst = 0.0
    for i in range(3):
        for j in range(3):
            exact = fs[i].inner_product(fs[j])
            quad = orc.quad_inner(samples[i], samples[j], grid)
            scale = fs[i].norm() * fs[j].norm()
            worst = max(worst, abs(exact - quad) / scale)
    return CheckResult("gamma-vs-quadrature", worst <= 1e-8,
                       f"max relative mismatch {worst:.3e} (tol 1e-08)")


def run_all(nr_params: NRParams, dirac_params: DiracParams,
            tol: float = 1e-11, n_points: int = 4096,
            scan_points: int = 16384) -> list[CheckResult]:
    return [
        check_riccati(tol),
        check_nr_factorization(tol),
        check_nr_intertwining(tol),
        check_nr_eigen(nr_params, tol),
        check_nr_nodes(nr_params),
        check_nr_orthogonality(),
        check_nr_fd(nr_params, n_points),
        check_dirac_kernels(tol),
        check_dirac_intertwining(tol),
        check_dirac_eigen(dirac_params, tol),
        check_degeneracy(dirac_params),
        check_spectrum_identity(),
        check_xi_superpotential(dirac_params),
        check_dirac_scan(dirac_params, scan_points),
        check_gamma_vs_quadrature(nr_params),
    ]
