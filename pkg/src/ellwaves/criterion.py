"""The transverse-instability criterion.

For an operator L with spectrum lambda_0 < lambda_1 = 0 < lambda_2 <= ...
whose ground state psi_0 and first positive-eigenvalue eigenfunction
psi_2 both have nonzero mean, instability of the associated transverse
pencil is implied by

    lambda_0 ||psi_0||^2 / (I_0)^2 + lambda_2 ||psi_2||^2 / (I_2)^2 < 0,

where I_j = integral of psi_j over one period.  The quantity

    h = |I_2| / (sqrt(lambda_2) ||psi_2||) - |I_0| / (sqrt(|lambda_0|) ||psi_0||)

is positive exactly when the inequality holds, which is the curve this
module sweeps over the modulus kappa.

Two independent evaluation routes are provided: the closed-form integral
tables (products of K(kappa) and E(kappa)) and periodic quadrature of the
sampled eigenfunctions; the test suite holds them to 1e-8 agreement.  A
third route evaluates the quadratic form <L u', u'> directly on a grid
for the explicit test vector u' = t0 psi_0 - t2 psi_2 with mean zero.

The snoidal defocusing family is the negative case: its first positive
eigenfunctions sn*dn and sn*cn integrate to zero, the test vector must
pair psi_0 with the lambda_4 eigenfunction, and the inequality then fails
for every kappa, so this criterion certifies nothing for that family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .elliptic import EllipticModulus, complete_E, complete_K
from .hill import PeriodicGrid, assemble_hill
from .lame import (
    EigenPair,
    OperatorKind,
    PhysicalOperator,
    physical_operator,
    physical_spectrum,
)
from .waves import WaveFamily, WaveProfile, build

_ZERO_EIG_TOL = 1e-10
_MEAN_TOL = 1e-8


class CriterionNotApplicableError(ValueError):
    """The operator's low spectrum does not have the lambda0 < 0 < lambda2
    shape with nonzero-mean eigenfunctions required by the test vector."""


class IntegralTable(NamedTuple):
    """Period integrals of the two test eigenfunctions and their squares."""

    int_psi0: float
    int_psi2: float
    norm2_psi0: float
    norm2_psi2: float


@dataclass(frozen=True)
class CriterionReport:
    """Everything the instability test produced at one (family, kappa).

    ``lambda2``, ``int_psi2``, ``norm2_psi2`` refer to the lowest
    positive-eigenvalue eigenfunction with nonzero mean (the lambda_4 pair
    for the snoidal defocusing family).  ``rayleigh`` is <L u', u'> for
    the explicit test vector and is NaN on reports produced by the
    closed-form sweeps, which do not assemble a grid.
    """

    family: WaveFamily
    kappa: float
    lambda0: float
    lambda2: float
    int_psi0: float
    int_psi2: float
    norm2_psi0: float
    norm2_psi2: float
    lhs_a10: float
    h_value: float
    unstable: bool
    rayleigh: float = math.nan


def periodic_quadrature(values: np.ndarray, period: float) -> float:
    """Trapezoid (= rectangle) rule on a uniform periodic grid.

    Spectrally accurate for analytic periodic integrands.
    """
    values = np.asarray(values, dtype=float)
    return float(values.mean() * period)


def closed_integrals_kdv(kappa: EllipticModulus, alpha: float = 1.0) -> IntegralTable:
    """Closed forms of the four cnoidal-KdV test integrals over one period.

    With s = sqrt(1 - k^2 + 4 k^4) and b_-+ = 1 + 2 k^2 -+ s, the
    eigenfunctions are dn (1 - b sn^2)(alpha x) and the integrals reduce
    to the dn-moment identities

        int_0^K dn       = pi/2,
        int_0^K dn^3     = pi (2 - k^2) / 4,
        int_0^K dn^2 sn^2 = ((2k^2 - 1) E + (1 - k^2) K) / (3 k^2),
        int_0^K dn^2 sn^4 = ((8k^4 - 3k^2 - 2) E + 2 (1 + k^2 - 2k^4) K) / (15 k^4).
    """
    k = kappa.kappa
    k2 = k * k
    K = complete_K(kappa)
    E = complete_E(kappa)
    s = math.sqrt(1.0 - k2 + 4.0 * k2 * k2)
    b_minus = 1.0 + 2.0 * k2 - s
    b_plus = 1.0 + 2.0 * k2 + s
    i22 = ((2.0 * k2 - 1.0) * E + (1.0 - k2) * K) / (3.0 * k2)
    i24 = ((8.0 * k2 * k2 - 3.0 * k2 - 2.0) * E + 2.0 * (1.0 + k2 - 2.0 * k2 * k2) * K) / (
        15.0 * k2 * k2
    )
    int0 = (math.pi / alpha) * (
        (2.0 - k2) / (2.0 * k2) * (1.0 + 2.0 * k2 - s) + (s - 1.0 - k2) / k2
    )
    int2 = (math.pi / alpha) * (
        (2.0 - k2) / (2.0 * k2) * (1.0 + 2.0 * k2 + s) - (1.0 + k2 + s) / k2
    )
    norm0 = (2.0 / alpha) * (E - 2.0 * b_minus * i22 + b_minus**2 * i24)
    norm2 = (2.0 / alpha) * (E - 2.0 * b_plus * i22 + b_plus**2 * i24)
    return IntegralTable(int0, int2, norm0, norm2)


def closed_integrals_mkdv(kappa: EllipticModulus, alpha: float = 1.0) -> IntegralTable:
    """Closed forms of the four dnoidal-mKdV test integrals over one period.

    With r = sqrt(1 - k^2 + k^4) and g_-+ = 1 + k^2 -+ r, the
    eigenfunctions are (1 - g sn^2)(alpha x) and the reduction uses
    int_0^K sn^2 = (K - E)/k^2 and
    int_0^K sn^4 = ((2 + k^2) K - 2 (1 + k^2) E) / (3 k^4).
    """
    k = kappa.kappa
    k2 = k * k
    K = complete_K(kappa)
    E = complete_E(kappa)
    r = math.sqrt(1.0 - k2 + k2 * k2)
    g_minus = 1.0 + k2 - r
    g_plus = 1.0 + k2 + r
    s4 = ((2.0 + k2) * K - 2.0 * (1.0 + k2) * E) / (3.0 * k2 * k2)
    int0 = 2.0 / (alpha * k2) * ((r - 1.0) * K + g_minus * E)
    int2 = 2.0 / (alpha * k2) * ((r + 1.0 + k2) * E - (1.0 + r) * K)
    norm0 = (2.0 / alpha) * (K - 2.0 * g_minus * (K - E) / k2 + g_minus**2 * s4)
    norm2 = (2.0 / alpha) * (K - 2.0 * g_plus * (K - E) / k2 + g_plus**2 * s4)
    return IntegralTable(int0, int2, norm0, norm2)


def select_test_pairs(op: PhysicalOperator, n: int = 512) -> tuple[EigenPair, EigenPair]:
    """Pick the (ground, first nonzero-mean positive) eigenpairs of an
    operator, the two functions the criterion's test vector is built from.

    Raises CriterionNotApplicableError when the spectrum lacks the
    lambda0 < 0 < lambda2 shape (e.g. the NLS L+ operators, whose lowest
    eigenvalue is zero).
    """
    pairs = physical_spectrum(op)
    if not pairs or pairs[0].eigenvalue >= -_ZERO_EIG_TOL:
        raise CriterionNotApplicableError(
            f"criterion inapplicable: {op.family.value}/{op.which.value} has no "
            "negative ground eigenvalue"
        )
    ground = pairs[0]
    grid = PeriodicGrid(n, op.domain_period)
    for pair in pairs[1:]:
        if pair.eigenvalue <= _ZERO_EIG_TOL:
            continue
        samples = pair.eigenfunction(grid.nodes)
        mean = periodic_quadrature(samples, op.domain_period)
        if abs(mean) > _MEAN_TOL * op.domain_period * np.abs(samples).max():
            return ground, pair
    raise CriterionNotApplicableError(
        f"criterion inapplicable: {op.family.value}/{op.which.value} has no "
        "positive-eigenvalue eigenfunction with nonzero mean"
    )


def quadrature_integrals(op: PhysicalOperator, n: int = 512) -> IntegralTable:
    """The four test integrals by periodic quadrature of the sampled
    eigenfunctions: the numerical route, independent of the closed tables."""
    ground, positive = select_test_pairs(op, n)
    grid = PeriodicGrid(n, op.domain_period)
    p0 = ground.eigenfunction(grid.nodes)
    p2 = positive.eigenfunction(grid.nodes)
    T = op.domain_period
    return IntegralTable(
        periodic_quadrature(p0, T),
        periodic_quadrature(p2, T),
        periodic_quadrature(p0 * p0, T),
        periodic_quadrature(p2 * p2, T),
    )


def _report(
    family: WaveFamily,
    kappa: float,
    lam0: float,
    lam2: float,
    table: IntegralTable,
    rayleigh: float = math.nan,
) -> CriterionReport:
    lhs = (
        table.norm2_psi0 * lam0 / table.int_psi0**2
        + table.norm2_psi2 * lam2 / table.int_psi2**2
    )
    h = abs(table.int_psi2) / math.sqrt(lam2 * table.norm2_psi2) - abs(
        table.int_psi0
    ) / math.sqrt(-lam0 * table.norm2_psi0)
    return CriterionReport(
        family=family,
        kappa=kappa,
        lambda0=lam0,
        lambda2=lam2,
        int_psi0=table.int_psi0,
        int_psi2=table.int_psi2,
        norm2_psi0=table.norm2_psi0,
        norm2_psi2=table.norm2_psi2,
        lhs_a10=lhs,
        h_value=h,
        unstable=lhs < 0.0,
        rayleigh=rayleigh,
    )


def h_curve(
    family: WaveFamily,
    kappa_grid: Iterable[float],
    alpha: float = 1.0,
    speed: float = 1.0,
) -> list[CriterionReport]:
    """Sweep the criterion over kappa for the cnoidal-KdV or dnoidal-mKdV
    family using the closed-form route. h > 0 at every kappa."""
    if family not in (WaveFamily.CNOIDAL_KDV, WaveFamily.DNOIDAL_MKDV):
        raise ValueError(f"h_curve covers kdv and mkdv, not {family.value!r}")
    a2 = alpha * alpha
    reports = []
    for kap in kappa_grid:
        m = EllipticModulus(kap)
        k2 = m.kappa * m.kappa
        if family is WaveFamily.CNOIDAL_KDV:
            s = math.sqrt(1.0 - k2 + 4.0 * k2 * k2)
            table = closed_integrals_kdv(m, alpha)
        else:
            s = math.sqrt(1.0 - k2 + k2 * k2)
            table = closed_integrals_mkdv(m, alpha)
        lam0 = a2 * (k2 - 2.0 - 2.0 * s)
        lam2 = a2 * (k2 - 2.0 + 2.0 * s)
        reports.append(_report(family, m.kappa, lam0, lam2, table))
    return reports


def defocusing_check(
    kappa_grid: Iterable[float], alpha: float = 1.0
) -> list[CriterionReport]:
    """Evaluate the criterion on the snoidal defocusing-mKdV family.

    The test vector pairs the ground state with the lambda_4 eigenfunction
    (the first positive one with nonzero mean); the period is 4K/alpha, so
    the integrals are twice their dnoidal-mKdV values.  The inequality
    fails at every kappa: ``unstable`` is False throughout.
    """
    a2 = alpha * alpha
    reports = []
    for kap in kappa_grid:
        m = EllipticModulus(kap)
        k2 = m.kappa * m.kappa
        r = math.sqrt(1.0 - k2 + k2 * k2)
        half = closed_integrals_mkdv(m, alpha)
        table = IntegralTable(*(2.0 * v for v in half))
        lam0 = a2 * (1.0 + k2 - 2.0 * r)  # nu_0 - nu_1 < 0
        lam4 = a2 * (1.0 + k2 + 2.0 * r)  # nu_4 - nu_1 > 0
        reports.append(
            _report(WaveFamily.SNOIDAL_DEFOCUSING_MKDV, m.kappa, lam0, lam4, table)
        )
    return reports


def defocusing_sides(kappa: EllipticModulus) -> tuple[float, float]:
    """The two sides of the defocusing inequality in its reduced printed
    form (norm factors dropped); instability would need lhs < rhs.

    Kept separate because the absolute-value placement differs from a
    literal substitution into the criterion: 1 + k^2 - 2 sqrt(1 - k^2 + k^4)
    is negative, so the |.| under the root is load-bearing.  The
    norm-weighted form of ``defocusing_check`` is authoritative for the
    ``unstable`` flag; this one is reported for comparison.
    """
    k2 = kappa.kappa**2
    K = complete_K(kappa)
    E = complete_E(kappa)
    r = math.sqrt(1.0 - k2 + k2 * k2)
    lhs = abs((r - 1.0) * K + (1.0 + k2 - r) * E) / math.sqrt(abs(1.0 + k2 - 2.0 * r))
    rhs = abs((r + 1.0 + k2) * E - (1.0 + r) * K) / math.sqrt(1.0 + k2 + 2.0 * r)
    return lhs, rhs


def rayleigh_test(
    profile: WaveProfile, which: OperatorKind = OperatorKind.L, n: int = 512
) -> CriterionReport:
    """Build the explicit test vector u' = t0 psi_0 - t2 psi_2 and evaluate
    the quadratic form <L u', u'> on a grid.

    t2 = 1 and t0 = I_2 / I_0 make u' mean-zero, so u' is the derivative
    of a periodic function and the form's sign decides the criterion; it
    must agree with the sign of the closed inequality.
    """
    op = physical_operator(profile, which)
    ground, positive = select_test_pairs(op, n)
    grid = PeriodicGrid(n, op.domain_period)
    p0 = ground.eigenfunction(grid.nodes)
    p2 = positive.eigenfunction(grid.nodes)
    T = op.domain_period
    table = IntegralTable(
        periodic_quadrature(p0, T),
        periodic_quadrature(p2, T),
        periodic_quadrature(p0 * p0, T),
        periodic_quadrature(p2 * p2, T),
    )
    t0 = table.int_psi2 / table.int_psi0
    u = t0 * p0 - p2
    mean = periodic_quadrature(u, T)
    if abs(mean) > 1e-10 * periodic_quadrature(np.abs(u), T):
        raise RuntimeError(
            f"test vector lost its zero mean ({mean:.3e}); the integral "
            "ratio t0 is inconsistent"
        )
    hill = assemble_hill(op.potential, grid)
    rayleigh = float(grid.weight * (u @ (hill.matrix @ u)))
    return _report(
        profile.family, profile.kappa.kappa, ground.eigenvalue, positive.eigenvalue,
        table, rayleigh,
    )
