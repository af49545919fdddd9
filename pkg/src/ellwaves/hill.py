"""Fourier-collocation discretization of periodic Hill operators and the
dense eigen/pencil solvers used as the package's independent numerical
oracle.

The differentiation matrices are the standard trigonometric collocation
matrices on a uniform periodic grid (Trefethen, "Spectral Methods in
MATLAB", ch. 3): exact on trigonometric polynomials of degree < n/2, with
D1 exactly antisymmetric and D2 exactly symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

_SYM_TOL = 1e-12


class PencilConvergenceError(RuntimeError):
    """Inverse iteration on a pencil failed to converge near the shift."""


@dataclass(frozen=True)
class PeriodicGrid:
    """n uniform nodes x_j = j * period / n on [0, period)."""

    n: int
    period: float

    def __post_init__(self) -> None:
        if self.n < 16 or self.n % 2:
            raise ValueError(f"grid size must be even and >= 16, got {self.n!r}")
        if not self.period > 0.0:
            raise ValueError(f"period must be positive, got {self.period!r}")

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) * (self.period / self.n)

    @property
    def weight(self) -> float:
        """Quadrature weight period/n of the trapezoid rule on this grid."""
        return self.period / self.n


@dataclass(frozen=True)
class DenseOperator:
    """A dense matrix tied to its grid, with a verified symmetry flag."""

    matrix: np.ndarray
    grid: PeriodicGrid
    symmetric: bool = False

    def __post_init__(self) -> None:
        m = self.matrix
        if m.shape[0] != m.shape[1]:
            raise ValueError("operator matrix must be square")
        if self.symmetric:
            scale = np.abs(m).max()
            if np.abs(m - m.T).max() > _SYM_TOL * scale:
                raise ValueError("matrix claimed symmetric is not")


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenvalues with eigenvectors (columns) and residuals."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    def __post_init__(self) -> None:
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be ascending")


def diff_matrix(grid: PeriodicGrid, order: int) -> DenseOperator:
    """Fourier differentiation matrix of the given order (1 or 2).

    Built from the closed-form circulant stencils, so D1 is antisymmetric
    and D2 symmetric to the last bit.  D1 annihilates the unresolved
    Nyquist cosine mode (the usual even-n convention).
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    n = grid.n
    h = 2.0 * np.pi / n
    j = np.arange(1, n)
    col = np.empty(n)
    if order == 1:
        col[0] = 0.0
        col[1:] = 0.5 * (-1.0) ** j / np.tan(0.5 * j * h)
        scale = 2.0 * np.pi / grid.period
    else:
        col[0] = -np.pi**2 / (3.0 * h * h) - 1.0 / 6.0
        col[1:] = -0.5 * (-1.0) ** j / np.sin(0.5 * j * h) ** 2
        scale = (2.0 * np.pi / grid.period) ** 2
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return DenseOperator(col[idx] * scale, grid, symmetric=(order == 2))


def assemble_hill(q_sampler, grid: PeriodicGrid) -> DenseOperator:
    """Dense symmetric collocation of H = -d^2/dx^2 + q(x)."""
    q = q_sampler(grid.nodes) if callable(q_sampler) else np.asarray(q_sampler, float)
    if q.shape != (grid.n,):
        raise ValueError("potential samples must match the grid")
    d2 = diff_matrix(grid, 2).matrix
    return DenseOperator(-d2 + np.diag(q), grid, symmetric=True)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Make each column's largest-magnitude entry positive (reproducibility)."""
    idx = np.abs(vectors).argmax(axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def eigs_symmetric(a: DenseOperator, m: int) -> SpectrumResult:
    """Lowest m eigenpairs of a symmetric dense operator.

    Backed by the LAPACK symmetric eigensolver; deterministic for a fixed
    input, with the eigenvector sign convention of ``_fix_signs``.
    """
    if not a.symmetric:
        raise ValueError("eigs_symmetric requires a symmetric operator")
    if not 1 <= m <= a.matrix.shape[0]:
        raise ValueError(f"requested {m} pairs from a {a.matrix.shape[0]}-dim operator")
    w, v = np.linalg.eigh(a.matrix)
    w, v = w[:m], _fix_signs(v[:, :m])
    res = np.linalg.norm(a.matrix @ v - v * w, axis=0)
    return SpectrumResult(w, v, res)


def eigs_pencil(
    a: DenseOperator,
    b: DenseOperator,
    shift: float,
    tol: float = 1e-9,
    max_iter: int = 60,
) -> SpectrumResult:
    """The pencil eigenvalue sigma B u = A u nearest the shift.

    Generalized inverse iteration in two phases: fixed-shift power steps
    on (A - shift B)^{-1} B first, which lock onto the eigenvalue nearest
    the shift, then Rayleigh-style polishing with the least-squares
    quotient <Bu, Au>/<Bu, Bu> (the plain Rayleigh quotient degenerates
    when B is antisymmetric).

    The convergence threshold is max(tol, rounding floor of the dense
    matvec), so ill-scaled operators fail loudly instead of spinning.
    """
    amat, bmat = a.matrix, b.matrix
    n = amat.shape[0]
    if bmat.shape != amat.shape:
        raise ValueError("pencil operators must have matching shapes")
    rng = np.random.default_rng(0)
    u = rng.standard_normal(n)
    u /= np.linalg.norm(u)
    abs_a, abs_b = np.abs(amat), np.abs(bmat)
    sigma = float(shift)
    fixed_steps = 6
    residual = math.inf
    for it in range(max_iter):
        try:
            w = np.linalg.solve(amat - sigma * bmat, bmat @ u)
        except np.linalg.LinAlgError:
            # exactly singular shift: nudge by a relative ulp-scale step
            sigma += 1e-12 * max(abs(sigma), 1.0)
            continue
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0 or not np.isfinite(norm_w):
            raise PencilConvergenceError("inverse iteration produced no direction")
        u_new = w / norm_w
        stabilized = abs(abs(float(u_new @ u)) - 1.0) <= 1e-9
        u = u_new
        au, bu = amat @ u, bmat @ u
        denom = float(bu @ bu)
        if denom == 0.0:
            raise PencilConvergenceError("iterate fell in the kernel of B")
        sigma_ls = float((bu @ au) / denom)
        residual = float(np.linalg.norm(au - sigma_ls * bu))
        floor = 4.0 * np.finfo(float).eps * float(
            np.linalg.norm(abs_a @ np.abs(u) + abs(sigma_ls) * (abs_b @ np.abs(u)))
        )
        if residual <= max(tol, floor):
            u = _fix_signs(u[:, None])[:, 0]
            return SpectrumResult(
                np.array([sigma_ls]), u[:, None], np.array([residual])
            )
        # keep the shift fixed until the direction settles on the
        # nearest eigenvector, then let the quotient take over
        if it >= fixed_steps or stabilized:
            sigma = sigma_ls
    raise PencilConvergenceError(
        f"pencil iteration did not reach tol={tol:g} near shift {shift:g} "
        f"in {max_iter} steps (last residual {residual:.3e})"
    )
