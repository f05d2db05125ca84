"""Matrix intertwining hierarchy for the radial Dirac problem.

After separating the cylindrical variables and rotating the spin frame, the
radial operator becomes

    H_n = [[ mbar*s0, h_n ], [ h_n, -mbar*s0 ]],
    h_n = -i s1 d/drho + ((a+n)/rho - b/(a+n)) s2 + d_n s3,

with s_i the Pauli matrices. A first-order block operator built from a 2x2
intertwiner links H_n to H_{n+1}; its kernel is spanned by two explicit
exponential-polynomial spinors, which seed four families of eigenvectors.
Lowering chains map every level back to H_0, giving the bound spectrum

    +/- sqrt(mbar^2 + d_n^2),   d_n^2 = d0^2 + n(2a+n) b^2 / (a^2 (a+n)^2).

All operator applications happen inside the exact algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateDenominator, DomainError, NegativeRadicand,
                     NoBoundStates, SingularXi)
from .expalg import ExpoPoly
from .params import DiracParams, PhysicalParams

S0 = np.eye(2, dtype=complex)
S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
S3 = np.array([[1, 0], [0, -1]], dtype=complex)

_ZERO2 = np.zeros((2, 2), dtype=complex)
ALPHA1 = np.block([[_ZERO2, S1], [S1, _ZERO2]])
ALPHA2 = np.block([[_ZERO2, S2], [S2, _ZERO2]])
ALPHA3 = np.block([[_ZERO2, S3], [S3, _ZERO2]])
BETA = np.block([[S0, _ZERO2], [_ZERO2, -S0]])
SIGMA1 = np.block([[S1, _ZERO2], [_ZERO2, S1]])
SIGMA3 = np.block([[S3, _ZERO2], [_ZERO2, S3]])

FAMILIES = ("a", "b", "c", "d")


def _check_family(fam: str) -> None:
    if fam not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {fam!r}")


@dataclass(frozen=True)
class SpinorFn:
    """A 2- or 4-component function with exponential-polynomial entries."""

    components: tuple[ExpoPoly, ...]

    def __post_init__(self):
        if len(self.components) not in (2, 4):
            raise ValueError("spinor functions have 2 or 4 components")
        ctx = {(c.a, c.b) for c in self.components}
        if len(ctx) != 1:
            raise ValueError("all components must share one (a, b) context")

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def a(self) -> float:
        return self.components[0].a

    @property
    def b(self) -> float:
        return self.components[0].b

    def __add__(self, other: "SpinorFn") -> "SpinorFn":
        return SpinorFn(tuple(p + q for p, q in
                              zip(self.components, other.components, strict=True)))

    def __sub__(self, other: "SpinorFn") -> "SpinorFn":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "SpinorFn":
        return SpinorFn(tuple(p.scale(c) for p in self.components))

    def is_zero(self, tol: float = 1e-12) -> bool:
        return all(p.is_zero(tol) for p in self.components)

    def max_abs_coeff(self) -> float:
        return max(p.max_abs_coeff() for p in self.components)

    def eval(self, rho: float) -> np.ndarray:
        return np.array([p.eval(rho) for p in self.components])

    def eval_array(self, rhos: np.ndarray) -> np.ndarray:
        return np.stack([p.eval_array(rhos) for p in self.components])


def spinor_inner(f: SpinorFn, g: SpinorFn) -> complex:
    """Component-wise closed-form inner product summed over the spinor index."""
    return sum((p.inner_product(q) for p, q in
                zip(f.components, g.components, strict=True)), start=0j)


def normalize_spinor(f: SpinorFn) -> SpinorFn:
    return f.scale(1.0 / math.sqrt(spinor_inner(f, f).real))


@dataclass(frozen=True)
class MatrixOp:
    """First-order operator  dcoef * d/drho + potential(rho).

    dcoef is a constant complex matrix; the potential is a matrix of pure
    Laurent polynomials, so application keeps spinors inside the algebra.
    Compositions are realized by applying operators in sequence rather than
    materializing second-order forms.
    """

    dcoef: np.ndarray
    potential: tuple[tuple[ExpoPoly, ...], ...]

    @property
    def size(self) -> int:
        return self.dcoef.shape[0]

    def apply(self, f: SpinorFn) -> SpinorFn:
        if f.size != self.size:
            raise ValueError(f"operator size {self.size} vs spinor size {f.size}")
        derivs = [p.differentiate() for p in f.components]
        out = []
        for i in range(self.size):
            total = ExpoPoly.zero(f.a, f.b)
            for j in range(self.size):
                c = self.dcoef[i, j]
                if c != 0:
                    total = total + derivs[j].scale(c)
                pot = self.potential[i][j]
                if pot.terms:
                    total = total + f.components[j].mul_laurent(pot)
            out.append(total)
        return SpinorFn(tuple(out))

    def potential_at(self, rho: float) -> np.ndarray:
        return np.array([[p.eval(rho) for p in row] for row in self.potential])


def _pot_matrix(params: DiracParams,
                parts: list[tuple[ExpoPoly, np.ndarray]],
                size: int) -> tuple[tuple[ExpoPoly, ...], ...]:
    zero = ExpoPoly.zero(params.a, params.b)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = zero
            for poly, mat in parts:
                if mat[i, j] != 0:
                    entry = entry + poly.scale(mat[i, j])
            row.append(entry)
        rows.append(tuple(row))
    return tuple(rows)


def _const(params: DiracParams, value: complex) -> ExpoPoly:
    return ExpoPoly.term(params.a, params.b, value)


def _w_coef(params: DiracParams, n: int) -> ExpoPoly:
    an = params.a + n
    return (ExpoPoly.term(params.a, params.b, an, mu=0, j=-1)
            + _const(params, -params.b / an))


def dn(params: DiracParams, n: int) -> float:
    """Level-n constant of the s3 channel.

    Only the square is fixed by the hierarchy:
    d_n^2 = d0^2 + n(2a+n) b^2 / (a^2 (a+n)^2). The root is taken with the
    sign of d0 (PLUS when d0 = 0), which makes d_n continuous in the inputs
    and equal to d0 at n = 0.
    """
    a, b = params.a, params.b
    dsq = params.d0 ** 2 + n * (2 * a + n) * b ** 2 / (a ** 2 * (a + n) ** 2)
    sign = -1.0 if params.d0 < 0 else 1.0
    return sign * math.sqrt(dsq)


def h_operator(params: DiracParams, n: int) -> MatrixOp:
    """2x2 block:  -i s1 d/drho + ((a+n)/rho - b/(a+n)) s2 + d_n s3."""
    pot = _pot_matrix(params, [
        (_w_coef(params, n), S2),
        (_const(params, dn(params, n)), S3),
    ], 2)
    return MatrixOp(-1j * S1, pot)


def big_hamiltonian(params: DiracParams, n: int) -> MatrixOp:
    """4x4 level-n operator with h_n off-diagonal blocks and +/- mbar identity blocks."""
    pot = _pot_matrix(params, [
        (_w_coef(params, n), ALPHA2),
        (_const(params, dn(params, n)), ALPHA3),
        (_const(params, params.mbar), BETA),
    ], 4)
    return MatrixOp(-1j * ALPHA1, pot)


def b_dagger(params: DiracParams, n: int) -> MatrixOp:
    """2x2 raising intertwiner between levels n and n+1:

        -s0 d/drho + (2(a+n)+1)/2 [1/rho - b/((a+n)(a+n+1))] s0
        - (d_{n+1}-d_n)/2 (i s1 - s2) - (1/2) [1/rho + b/((a+n)(a+n+1))] s3.
    """
    a, b = params.a, params.b
    an = a + n
    bb = b / (an * (an + 1))
    p_poly = (ExpoPoly.term(a, b, 1.0, mu=0, j=-1) + _const(params, -bb)
              ).scale((2 * an + 1) / 2.0)
    r_poly = (ExpoPoly.term(a, b, 1.0, mu=0, j=-1) + _const(params, bb)).scale(0.5)
    q = (dn(params, n + 1) - dn(params, n)) / 2.0
    pot = _pot_matrix(params, [
        (p_poly, S0),
        (_const(params, -q), 1j * S1 - S2),
        (r_poly, -S3),
    ], 2)
    return MatrixOp(-S0.copy(), pot)


def _adjoint(op: MatrixOp) -> MatrixOp:
    """Formal adjoint on (0, inf) with measure d(rho), boundary terms dropped:
    flip the derivative sign and conjugate-transpose the potential."""
    size = op.size
    pot = tuple(tuple(op.potential[j][i].conjugate() for j in range(size))
                for i in range(size))
    return MatrixOp(-op.dcoef.conj().T, pot)


def b_op(params: DiracParams, n: int) -> MatrixOp:
    return _adjoint(b_dagger(params, n))


def _block_diag(op: MatrixOp, params: DiracParams) -> MatrixOp:
    zero = ExpoPoly.zero(params.a, params.b)
    dcoef = np.block([[op.dcoef, _ZERO2], [_ZERO2, op.dcoef]])
    pot = []
    for i in range(4):
        row = []
        for j in range(4):
            if i // 2 == j // 2:
                row.append(op.potential[i % 2][j % 2])
            else:
                row.append(zero)
        pot.append(tuple(row))
    return MatrixOp(dcoef, tuple(pot))


def a_dagger(params: DiracParams, n: int) -> MatrixOp:
    """4x4 raising intertwiner: the 2x2 intertwiner on both diagonal blocks."""
    return _block_diag(b_dagger(params, n), params)


def a_op(params: DiracParams, n: int) -> MatrixOp:
    """Formal adjoint of a_dagger; lowers level n+1 eigenvectors to level n."""
    return _block_diag(b_op(params, n), params)


def kernel_chi(params: DiracParams, n: int) -> SpinorFn:
    """First kernel spinor of the level-n intertwiner: (1, 0) rho^(a+n) e^(-b rho/(a+n))."""
    a, b = params.a, params.b
    return SpinorFn((ExpoPoly.term(a, b, 1.0, mu=1, j=n, k=n), ExpoPoly.zero(a, b)))


def kernel_xi(params: DiracParams, n: int) -> SpinorFn:
    """Second kernel spinor, decaying at the slower rate b/(a+n+1):

        ( i (a+n)^2 (a+n+1)^2 (d_{n+1}-d_n)/b^2 (1 - b rho/((a+n)(a+n+1))) )
        (                      rho                                          )
        * rho^(a+n) e^(-b rho/(a+n+1)).
    """
    a, b = params.a, params.b
    an = a + n
    c = an ** 2 * (an + 1) ** 2 * (dn(params, n + 1) - dn(params, n)) / b ** 2
    comp0 = (ExpoPoly.term(a, b, 1j * c, mu=1, j=n, k=n + 1)
             + ExpoPoly.term(a, b, -1j * c * b / (an * (an + 1)),
                             mu=1, j=n + 1, k=n + 1))
    comp1 = ExpoPoly.term(a, b, 1.0, mu=1, j=n + 1, k=n + 1)
    return SpinorFn((comp0, comp1))


def family_eigenvalue(params: DiracParams, n: int, fam: str) -> float:
    """Level-n eigenvalue of the family: +/- sqrt(mbar^2 + d^2) with d = d_n
    for families a/b and d = d_{n+1} for families c/d."""
    _check_family(fam)
    d = dn(params, n) if fam in ("a", "b") else dn(params, n + 1)
    s = math.hypot(params.mbar, d)
    return s if fam in ("a", "c") else -s


def eigenvector(params: DiracParams, n: int, fam: str) -> tuple[SpinorFn, float]:
    """Level-n eigenvector annihilated by the raising intertwiner, with its
    eigenvalue. Families a/b stack the chi kernel, c/d the xi kernel; the
    lower block carries the closed-form component ratio.

    Families b and d divide by sqrt(mbar^2 + d^2) - mbar, which vanishes with
    d; that case raises DegenerateDenominator instead of guessing a limit.
    """
    _check_family(fam)
    if fam in ("a", "b"):
        d = dn(params, n)
        seed = kernel_chi(params, n)
    else:
        d = dn(params, n + 1)
        seed = kernel_xi(params, n)
    s = math.hypot(params.mbar, d)
    if fam in ("a", "c"):
        if s + params.mbar == 0.0:
            raise DegenerateDenominator("mbar = 0 and d = 0 leave the ratio undefined")
        ratio = d / (s + params.mbar)
        if fam == "c":
            ratio = -ratio
        value = s
    else:
        if d == 0.0:
            raise DegenerateDenominator(
                f"family {fam} needs a nonzero d (level constant); got d = 0")
        # s - mbar rewritten as d^2/(s + mbar) for numerical stability
        ratio = (s + params.mbar) / d
        if fam == "b":
            ratio = -ratio
        value = -s
    lower = seed.scale(ratio)
    return SpinorFn(seed.components + lower.components), value


def eigenfunction_chain(params: DiracParams, n: int, fam: str) -> SpinorFn:
    """Level-0 eigenfunction obtained by lowering the level-n eigenvector
    through the chain; eigenvector of the base operator at the family's
    level-n eigenvalue."""
    phi, _ = eigenvector(params, n, fam)
    for k in range(n - 1, -1, -1):
        phi = a_op(params, k).apply(phi)
    return phi


def rotation_matrix(phys: PhysicalParams) -> np.ndarray:
    """Constant spin rotation exp(-i theta Sigma_1 / 2) with tan(theta) = -k/ell.

    The branch is fixed by cos(theta) = ell/lam, sin(theta) = -k/lam, which
    concentrates the 1/rho dependence of the radial operator on a single
    matrix. For ell = 0 this reduces to theta = -sign(k) pi/2.
    """
    theta = math.atan2(-phys.k, phys.ell)
    return (math.cos(theta / 2.0) * np.eye(4, dtype=complex)
            - 1j * math.sin(theta / 2.0) * SIGMA1)


def superpotential_matrix_residual(params: DiracParams, n: int,
                                   rho_samples, skip_singular: bool = False) -> float:
    """Max Frobenius mismatch between the raising intertwiner's potential part
    W(rho) and Xi'(rho) Xi(rho)^(-1), where Xi has the four level-n family
    eigenvectors as columns.

    Annihilation of every column by (-d/drho + W) forces W Xi = Xi', so the
    residual vanishes wherever Xi is invertible. Near-singular samples raise
    SingularXi, or are skipped when skip_singular is set.
    """
    cols = [eigenvector(params, n, fam)[0] for fam in FAMILIES]
    dcols = [SpinorFn(tuple(p.differentiate() for p in col.components))
             for col in cols]
    wop = a_dagger(params, n)
    worst = 0.0
    for rho in rho_samples:
        xi = np.stack([col.eval(rho) for col in cols], axis=1)
        dxi = np.stack([col.eval(rho) for col in dcols], axis=1)
        if np.linalg.cond(xi) > 1e12:
            if skip_singular:
                continue
            raise SingularXi(f"eigenvector matrix is singular at rho = {rho}")
        resid = wop.potential_at(rho) - dxi @ np.linalg.inv(xi)
        worst = max(worst, float(np.linalg.norm(resid)))
    return worst


def spectrum_dirac(phys: PhysicalParams, n: int, sign: int) -> float:
    """Bound energy of the full relativistic problem:

        +/- m c^2 sqrt(1 + p_z^2/(m^2 c^2)
                         - p_z^2 k^2 / (hbar^2 m^2 c^2 (lam/hbar + n)^2)).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if phys.pz * phys.k <= 0:
        raise NoBoundStates("p_z*k <= 0 carries no bound states")
    radicand = (1.0 + phys.pz ** 2 / (phys.m * phys.c) ** 2
                - phys.pz ** 2 * phys.k ** 2
                / (phys.hbar ** 2 * (phys.m * phys.c) ** 2
                   * (phys.lam / phys.hbar + n) ** 2))
    if radicand < 0:
        raise NegativeRadicand(f"radicand {radicand} < 0")
    return sign * phys.m * phys.c ** 2 * math.sqrt(radicand)


def assemble_full_spinor(phys: PhysicalParams, fam: str, n: int,
                         rho: float, phi: float, z: float) -> np.ndarray:
    """Four-component eigenspinor of the original problem at a space point.

    Combines the longitudinal plane wave, the angular phases that make the
    result a total-angular-momentum eigenvector, the constant spin rotation,
    and the radial-measure factor rho^(-1/2). The radial chain is normalized
    to unit integral of its squared modulus, so the z and phi phases drop out
    of the probability density.
    """
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    _check_family(fam)
    dp = phys.to_dirac()
    chain = eigenfunction_chain(dp, n, fam)
    values = normalize_spinor(chain).eval(rho) / math.sqrt(rho)
    rotated = rotation_matrix(phys) @ values
    s3 = np.array([1.0, -1.0, 1.0, -1.0])
    angular = np.exp(1j * (phys.ell / phys.hbar - 0.5 * s3) * phi)
    return np.exp(1j * phys.pz * z / phys.hbar) * angular * rotated
