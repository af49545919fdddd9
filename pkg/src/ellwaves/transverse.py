"""Transverse linearized pencils sigma A U = L(k) U and the continuation
of their unstable branch.

Two pencil kinds cover the package's families:

  KP:   L(k) = -d/dx (-d^2/dx^2 + c - f'(phi)) d/dx + k^2  on the
        mean-zero subspace, with A = -d/dx.  The subspace is realized by
        an explicit trigonometric basis that drops both the constant mode
        and the unresolved Nyquist cosine (the even-n differentiation
        matrix annihilates the latter, which would otherwise contribute a
        spurious kernel vector), leaving d/dx exactly invertible.

  NLS:  L(k) = diag(Lplus, Lminus) + k^2 on 2n-vectors with A = J, the
        blockwise symplectic matrix (u1, u2) -> (u2, -u1).  This is the
        symplectically conjugated form of the (Lminus, Lplus) block
        system, which swaps the blocks and symmetrizes the pencil.

Since L(k) = L(0) + k^2 I exactly, dL/dk = 2k I, and the continuation's
nondegeneracy condition holds automatically once the kernel at the
critical wavenumber k0 = sqrt(-lambda_0(L(0))) is one-dimensional.  The
branch (sigma, k(sigma), U(sigma)) through (0, k0, kernel vector) is then
followed by a bordered Newton iteration in (V, k) with V orthogonal to
the kernel vector.

All solves, residuals and Newton right-hand sides use the same dense
matrices, so converged branch points are eigenpairs of the discretized
pencil itself and their residuals reach the dense-matvec floor.  The one
exception is ``kernel_residual``: applying the KP L(0) to the sampled
wave is evaluated in the factored form -d/dx (M phi') with the wave
derivative sampled analytically, because a numerically differentiated
phi' carries white rounding noise that the operator's high-frequency
symbol (~k^3) amplifies above the check's tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .hill import DenseOperator, PeriodicGrid, diff_matrix
from .lame import OperatorKind, physical_operator
from .waves import WaveFamily, WaveProfile

#: default sigma ladder for the branch continuation, small enough to stay
#: in the perturbative neighborhood of (0, k0)
SIGMA_LADDER: tuple[float, ...] = (1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2)

_KP_FAMILIES = frozenset(
    {
        WaveFamily.CNOIDAL_KDV,
        WaveFamily.DNOIDAL_MKDV,
        WaveFamily.SNOIDAL_DEFOCUSING_MKDV,
    }
)
_NLS_FAMILIES = frozenset(
    {WaveFamily.CNOIDAL_QUADRATIC_NLS, WaveFamily.DNOIDAL_CUBIC_NLS}
)


class PencilKind(Enum):
    KP = "kp"
    NLS = "nls"


class CriterionNotMetError(RuntimeError):
    """L(0) has no negative eigenvalue: no critical wavenumber exists."""


class KernelDimensionError(RuntimeError):
    """The kernel of L(k0) is not one-dimensional; continuation invalid."""


class BranchPoint(NamedTuple):
    sigma: float
    k: float
    vector: np.ndarray
    residual: float


@dataclass(frozen=True)
class KernelReport:
    """Outcome of the kernel checks at the critical wavenumber.

    ``kernel_dim`` counts eigenvalues of L(k0) inside [-zero_window,
    +zero_window]; ``gap_to_next`` is the distance from zero to the
    nearest eigenvalue outside it.  ``lprime_ratio`` is
    ||dL/dk(k0) phi|| / ||phi|| = 2 k0, nonzero by construction.
    """

    kernel_dim: int
    kernel_eigenvalue: float
    kernel_vector: np.ndarray
    gap_to_next: float
    zero_window: float
    lprime_ratio: float


@dataclass(frozen=True)
class PencilResult:
    """Critical wavenumber plus the continued unstable branch."""

    k0: float
    kernel_dim: int
    kernel_vector: np.ndarray
    branch: list[BranchPoint]
    truncated_at: float | None = None


@dataclass(frozen=True)
class TransversePencil:
    """Assembled pencil: dense matrices plus FFT application data."""

    kind: PencilKind
    profile: WaveProfile
    grid: PeriodicGrid
    l0: np.ndarray
    a_matrix: np.ndarray
    basis: np.ndarray | None
    potentials: tuple[np.ndarray, ...]
    wave_vector: np.ndarray | None

    @property
    def dim(self) -> int:
        return self.l0.shape[0]

    def l_matrix(self, k: float) -> np.ndarray:
        """Dense L(k) = L(0) + k^2 I."""
        return self.l0 + (k * k) * np.eye(self.dim)


def _trig_basis(n: int) -> np.ndarray:
    """Orthonormal columns spanning the mean-zero, Nyquist-free subspace:
    cos and sin of modes 1 .. n/2 - 1 on the n-point grid."""
    j = np.arange(n)
    cols = []
    for m in range(1, n // 2):
        theta = 2.0 * np.pi * m * j / n
        cols.append(np.cos(theta))
        cols.append(np.sin(theta))
    basis = np.array(cols).T
    return basis * math.sqrt(2.0 / n)


def build_pencil(
    kind: PencilKind, profile: WaveProfile, grid: PeriodicGrid
) -> TransversePencil:
    """Assemble the transverse pencil of a wave profile on a grid.

    The grid period must equal the wave's fundamental period.
    """
    if not math.isclose(grid.period, profile.period, rel_tol=1e-12):
        raise ValueError(
            f"grid period {grid.period!r} does not match wave period "
            f"{profile.period!r}"
        )
    fam = profile.family
    if kind is PencilKind.KP and fam not in _KP_FAMILIES:
        raise ValueError(f"family {fam.value!r} is not a KP-type linearization")
    if kind is PencilKind.NLS and fam not in _NLS_FAMILIES:
        raise ValueError(f"family {fam.value!r} is not an NLS-type linearization")

    n = grid.n
    nodes = grid.nodes
    d2 = diff_matrix(grid, 2).matrix
    if kind is PencilKind.KP:
        q = physical_operator(profile, OperatorKind.L).potential(nodes)
        m_mat = -d2 + np.diag(q)
        basis = _trig_basis(n)
        d1b = diff_matrix(grid, 1).matrix @ basis
        l0 = d1b.T @ m_mat @ d1b
        a_mat = -(basis.T @ diff_matrix(grid, 1).matrix @ basis)
        wave = profile.value(nodes)
        wave_red = basis.T @ (wave - wave.mean())
        return TransversePencil(
            kind, profile, grid, l0, a_mat, basis, (q,), wave_red
        )
    q_plus = physical_operator(profile, OperatorKind.L_PLUS).potential(nodes)
    q_minus = physical_operator(profile, OperatorKind.L_MINUS).potential(nodes)
    l0 = np.zeros((2 * n, 2 * n))
    l0[:n, :n] = -d2 + np.diag(q_plus)
    l0[n:, n:] = -d2 + np.diag(q_minus)
    a_mat = np.zeros((2 * n, 2 * n))
    eye = np.eye(n)
    a_mat[:n, n:] = eye
    a_mat[n:, :n] = -eye
    return TransversePencil(
        kind, profile, grid, l0, a_mat, None, (q_plus, q_minus), None
    )


def pencil_operators(pencil: TransversePencil, k: float) -> tuple[DenseOperator, DenseOperator]:
    """The (L(k), A) pair as DenseOperators, e.g. for ``hill.eigs_pencil``."""
    grid = pencil.grid
    return (
        DenseOperator(pencil.l_matrix(k), grid, symmetric=True),
        DenseOperator(pencil.a_matrix, grid, symmetric=False),
    )


def kernel_residual(pencil: TransversePencil) -> float:
    """||L(0) w|| / ||w|| for the projected sampled wave w of a KP pencil.

    Evaluated as -d/dx (M phi') with phi' sampled analytically: the wave
    is in the kernel of L(0) because M annihilates the wave derivative,
    and feeding the exact derivative keeps the check at the discretization
    floor (~1e-8) instead of the noise-amplification floor of the
    one-shot dense product.
    """
    if pencil.kind is not PencilKind.KP:
        raise ValueError("kernel_residual applies to KP pencils only")
    grid = pencil.grid
    dphi = pencil.profile.derivative(grid.nodes, 1)
    d1 = diff_matrix(grid, 1).matrix
    d2 = diff_matrix(grid, 2).matrix
    m_dphi = -(d2 @ dphi) + pencil.potentials[0] * dphi
    out = pencil.basis.T @ (-(d1 @ m_dphi))
    return float(np.linalg.norm(out) / np.linalg.norm(pencil.wave_vector))


def _zero_window(spectral_radius: float, base: float = 1e-8) -> float:
    """Near-zero eigenvalue window: the nominal base widened to the
    rounding floor of a dense eigensolve at this operator scale.

    Zero eigenvalues of L(0)/L(k0) come back from the eigensolver with
    fuzz of order eps * ||L||; the KP operators reach ||L|| ~ 1e9 at
    n = 256, where the nominal 1e-8 window would misclassify them.
    """
    return max(base, 256.0 * np.finfo(float).eps * spectral_radius)


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    return float(abs(u @ v) / (np.linalg.norm(u) * np.linalg.norm(v)))


def critical_wavenumber(pencil: TransversePencil) -> float:
    """k0 = sqrt(-lambda_0(L(0))), the wavenumber where L(k) loses
    definiteness along the ground state.

    Raises CriterionNotMetError when lambda_0(L(0)) is not negative
    beyond the eigensolver's near-zero window (the snoidal defocusing
    family lands here: its L(0) is nonnegative, with the sampled wave
    spanning the kernel).  For KP pencils the zero eigenvalue of L(0) is
    additionally certified to be carried by the sampled wave itself.
    """
    w, v = np.linalg.eigh(pencil.l0)
    lam0 = float(w[0])
    window = _zero_window(float(np.abs(w).max()))
    if lam0 >= -max(1e-10, window):
        raise CriterionNotMetError(
            f"lambda_0(L(0)) = {lam0:.3e} is not negative: criterion not met"
        )
    if pencil.kind is PencilKind.KP:
        lam1 = float(w[1])
        if abs(lam1) > window:
            raise RuntimeError(
                f"expected a zero eigenvalue of L(0), got lambda_1 = {lam1:.3e}"
            )
        if _cosine(v[:, 1], pencil.wave_vector) < 1.0 - 1e-7:
            raise RuntimeError(
                "zero mode of L(0) is not collinear with the sampled wave"
            )
    return math.sqrt(-lam0)


def verify_kernel_conditions(pencil: TransversePencil, k0: float) -> KernelReport:
    """Check the two continuation hypotheses at k0.

    (1) L(k0) has a one-dimensional kernel: exactly one eigenvalue inside
        the near-zero window, with a quantified gap to the rest.
    (2) dL/dk(k0) applied to the kernel vector is nonzero; since
        dL/dk = 2 k0 Id this holds with ratio exactly 2 k0.
    """
    w, v = np.linalg.eigh(pencil.l_matrix(k0))
    window = _zero_window(float(np.abs(w).max()))
    near = np.abs(w) <= window
    dim = int(near.sum())
    if dim == 0:
        raise KernelDimensionError(
            f"no eigenvalue of L(k0) within {window:.2e} of zero"
        )
    first = int(np.flatnonzero(near)[0])
    vec = v[:, first]
    vec = vec * np.sign(vec[np.abs(vec).argmax()] or 1.0)
    outside = np.abs(w[~near])
    gap = float(outside.min()) if outside.size else math.inf
    return KernelReport(
        kernel_dim=dim,
        kernel_eigenvalue=float(w[first]),
        kernel_vector=vec,
        gap_to_next=gap,
        zero_window=window,
        lprime_ratio=2.0 * k0,
    )


def _newton_point(
    pencil: TransversePencil,
    phi: np.ndarray,
    u0: np.ndarray,
    k_init: float,
    sigma: float,
    max_steps: int,
    tol: float,
) -> tuple[np.ndarray, float, float, bool]:
    """Solve L(k) U = sigma A U, <U - phi, phi> = 0 for (U, k) by a
    bordered Newton iteration warm-started at (u0, k_init)."""
    dim = pencil.dim
    u, k = u0.copy(), k_init
    residual = math.inf
    for _ in range(max_steps):
        system = pencil.l_matrix(k) - sigma * pencil.a_matrix
        g = system @ u
        residual = float(np.linalg.norm(g) / np.linalg.norm(u))
        if residual <= tol:
            return u, k, residual, True
        bordered = np.zeros((dim + 1, dim + 1))
        bordered[:dim, :dim] = system
        bordered[:dim, dim] = 2.0 * k * u
        bordered[dim, :dim] = phi
        rhs = np.concatenate([-g, [0.0]])
        try:
            step = np.linalg.solve(bordered, rhs)
        except np.linalg.LinAlgError:
            return u, k, residual, False
        u = u + step[:dim]
        k += float(step[dim])
    return u, k, residual, False


def continue_branch(
    pencil: TransversePencil,
    k0: float,
    sigma_list: Iterable[float] = SIGMA_LADDER,
    max_newton: int = 50,
    tol: float = 1e-10,
) -> PencilResult:
    """Follow the branch (sigma, k(sigma), U(sigma)) from (0, k0, phi).

    Each sigma is solved by the bordered Newton iteration, warm-started
    from the previous point (V = 0, k = k0 at the smallest sigma).  A
    sigma that fails to converge truncates the branch: that is the signal
    of leaving the perturbative regime, recorded in ``truncated_at``.
    """
    sigmas = sorted(float(s) for s in sigma_list)
    if not sigmas or sigmas[0] <= 0.0:
        raise ValueError("sigma_list must contain positive values only")
    report = verify_kernel_conditions(pencil, k0)
    if report.kernel_dim != 1:
        raise KernelDimensionError(
            f"kernel of L(k0) is {report.kernel_dim}-dimensional; "
            "the continuation needs a simple kernel"
        )
    phi = report.kernel_vector / np.linalg.norm(report.kernel_vector)
    branch: list[BranchPoint] = []
    truncated_at = None
    u, k = phi.copy(), k0
    for sigma in sigmas:
        u_new, k_new, residual, ok = _newton_point(
            pencil, phi, u, k, sigma, max_newton, tol
        )
        if not ok:
            truncated_at = sigma
            break
        u, k = u_new, k_new
        branch.append(BranchPoint(sigma, k, u.copy(), residual))
    return PencilResult(
        k0=k0,
        kernel_dim=report.kernel_dim,
        kernel_vector=phi,
        branch=branch,
        truncated_at=truncated_at,
    )
