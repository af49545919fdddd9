"""The CLI self-test: a fast sweep of the package's cross-checking
invariants, each reported as one pass/fail line.

The checks mirror the test suite's core assertions: elliptic-function
identities against an in-module quadrature oracle, stationary-ODE
residuals, closed-form versus numerical spectra, closed-form versus
quadrature integrals, the criterion's three-way sign equivalence, and the
kernel identities of the linearized operators.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .criterion import (
    closed_integrals_kdv,
    closed_integrals_mkdv,
    defocusing_check,
    h_curve,
    quadrature_integrals,
    rayleigh_test,
)
from .elliptic import EllipticModulus, complete_E, complete_K, jacobi
from .hill import PeriodicGrid, assemble_hill, eigs_symmetric
from .lame import OperatorKind, VALID_OPERATORS, physical_operator, physical_spectrum
from .transverse import PencilKind, build_pencil, kernel_residual
from .waves import WaveFamily, build


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
             depth: int = 48) -> float:
    """Adaptive Simpson quadrature (the package's independent oracle for
    the complete elliptic integrals)."""

    def whole(fa, fm, fb, left, right):
        return (right - left) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a_, b_, fa, fm, fb, est, tol_, d):
        m = 0.5 * (a_ + b_)
        flm, frm = f(0.5 * (a_ + m)), f(0.5 * (m + b_))
        l_est = whole(fa, flm, fm, a_, m)
        r_est = whole(fm, frm, fb, m, b_)
        if d <= 0 or abs(l_est + r_est - est) <= 15.0 * tol_:
            return l_est + r_est + (l_est + r_est - est) / 15.0
        return recurse(a_, m, fa, flm, fm, l_est, 0.5 * tol_, d - 1) + recurse(
            m, b_, fm, frm, fb, r_est, 0.5 * tol_, d - 1
        )

    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, whole(fa, fm, fb, a, b), tol, depth)


def _speed_for(family: WaveFamily, speed: float):
    return speed if family is WaveFamily.CNOIDAL_KDV else None


def check_elliptic_identities(grid_n: int, tol: float) -> CheckResult:
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        kap = EllipticModulus(rng.uniform(0.02, 0.98))
        u = rng.uniform(-8.0, 8.0) * complete_K(kap)
        sn, cn, dn = jacobi(u, kap)
        worst = max(
            worst,
            abs(sn * sn + cn * cn - 1.0),
            abs(dn * dn + kap.kappa**2 * sn * sn - 1.0),
        )
    legendre = 0.0
    for k in np.arange(0.1, 0.95, 0.1):
        m, mp = EllipticModulus(k), EllipticModulus(math.sqrt(1.0 - k * k))
        legendre = max(
            legendre,
            abs(
                complete_E(m) * complete_K(mp)
                + complete_E(mp) * complete_K(m)
                - complete_K(m) * complete_K(mp)
                - math.pi / 2.0
            ),
        )
    ok = worst <= 1e-11 and legendre <= 1e-12
    return CheckResult(
        "elliptic-identities", ok, f"pyth={worst:.2e} legendre={legendre:.2e}"
    )


def check_elliptic_vs_quadrature(grid_n: int, tol: float) -> CheckResult:
    worst = 0.0
    for k in np.arange(0.1, 0.95, 0.1):
        m = EllipticModulus(k)
        k_ref = _simpson(lambda t: 1.0 / math.sqrt(1.0 - (k * math.sin(t)) ** 2),
                         0.0, math.pi / 2.0)
        e_ref = _simpson(lambda t: math.sqrt(1.0 - (k * math.sin(t)) ** 2),
                         0.0, math.pi / 2.0)
        worst = max(
            worst,
            abs(complete_K(m) - k_ref) / k_ref,
            abs(complete_E(m) - e_ref) / e_ref,
        )
    ok = worst <= max(tol, 1e-12)
    return CheckResult("elliptic-vs-quadrature", ok, f"max rel err {worst:.2e}")


def check_ode_residuals(grid_n: int, tol: float) -> CheckResult:
    worst = 0.0
    which = ""
    for family in WaveFamily:
        profile = build(family, EllipticModulus(0.5), 1.0, _speed_for(family, 1.0))
        res = profile.ode_residual()
        if res > worst:
            worst, which = res, family.value
    ok = worst <= 1e-9
    return CheckResult("ode-residuals", ok, f"max {worst:.2e} ({which})")


def check_oracle_equivalence(grid_n: int, tol: float) -> CheckResult:
    worst = 0.0
    which = ""
    for family, kinds in VALID_OPERATORS.items():
        profile = build(family, EllipticModulus(0.5), 1.0, _speed_for(family, 1.0))
        for kind in kinds:
            op = physical_operator(profile, kind)
            closed = physical_spectrum(op)
            grid = PeriodicGrid(grid_n, op.domain_period)
            numerical = eigs_symmetric(
                assemble_hill(op.potential, grid), len(closed)
            ).eigenvalues
            scale = max(abs(p.eigenvalue) for p in closed)
            for pair, num in zip(closed, numerical):
                err = abs(pair.eigenvalue - num) / max(abs(pair.eigenvalue), scale)
                if err > worst:
                    worst, which = err, f"{family.value}/{kind.value}"
    ok = worst <= max(tol, 1e-8)
    return CheckResult("oracle-equivalence", ok, f"max rel err {worst:.2e} ({which})")


def check_integral_transcription(grid_n: int, tol: float) -> CheckResult:
    worst = 0.0
    for kap in (0.25, 0.5, 0.75):
        m = EllipticModulus(kap)
        kdv = build(WaveFamily.CNOIDAL_KDV, m, 1.0, 1.0)
        mkdv = build(WaveFamily.DNOIDAL_MKDV, m, 1.0)
        for profile, closed in (
            (kdv, closed_integrals_kdv(m)),
            (mkdv, closed_integrals_mkdv(m)),
        ):
            quad = quadrature_integrals(physical_operator(profile, OperatorKind.L))
            for a, b in zip(closed, quad):
                worst = max(worst, abs(a - b) / max(abs(a), 1e-30))
    ok = worst <= max(tol, 1e-8)
    return CheckResult("integral-transcription", ok, f"max rel err {worst:.2e}")


def check_sign_equivalence(grid_n: int, tol: float) -> CheckResult:
    ok = True
    details = []
    for family in (WaveFamily.CNOIDAL_KDV, WaveFamily.DNOIDAL_MKDV):
        for kap in (0.3, 0.7):
            closed = h_curve(family, [kap], speed=1.0)[0]
            ray = rayleigh_test(
                build(family, EllipticModulus(kap), 1.0, _speed_for(family, 1.0))
            )
            agree = (
                closed.unstable
                and ray.unstable
                and (closed.h_value > 0.0)
                and (ray.rayleigh < 0.0)
            )
            ok = ok and agree
        details.append(f"{family.value}:unstable")
    defoc = defocusing_check([0.3, 0.7])
    ray = rayleigh_test(
        build(WaveFamily.SNOIDAL_DEFOCUSING_MKDV, EllipticModulus(0.5), 1.0)
    )
    stable = not any(r.unstable for r in defoc) and ray.rayleigh >= 0.0
    ok = ok and stable
    details.append("dmkdv:stable")
    return CheckResult("sign-equivalence", ok, " ".join(details))


def check_kernels(grid_n: int, tol: float) -> CheckResult:
    worst = 0.0
    which = ""
    for family in WaveFamily:
        profile = build(family, EllipticModulus(0.5), 1.0, _speed_for(family, 1.0))
        op = physical_operator(
            profile,
            OperatorKind.L_MINUS if family.is_nls else OperatorKind.L,
        )
        grid = PeriodicGrid(grid_n, profile.period)
        hill = assemble_hill(op.potential, grid)
        dphi = profile.derivative(grid.nodes, 1)
        rel = np.linalg.norm(hill.matrix @ dphi) / np.linalg.norm(dphi)
        if rel > worst:
            worst, which = rel, f"L phi' ({family.value})"
    for family in (WaveFamily.CNOIDAL_KDV, WaveFamily.DNOIDAL_MKDV):
        profile = build(family, EllipticModulus(0.5), 1.0, _speed_for(family, 1.0))
        grid = PeriodicGrid(grid_n, profile.period)
        pencil = build_pencil(PencilKind.KP, profile, grid)
        rel = kernel_residual(pencil)
        if rel > worst:
            worst, which = rel, f"L(0) wave ({family.value})"
    ok = worst <= max(tol, 1e-7)
    return CheckResult("kernel-identities", ok, f"max rel residual {worst:.2e} ({which})")


ALL_CHECKS: tuple[Callable[[int, float], CheckResult], ...] = (
    check_elliptic_identities,
    check_elliptic_vs_quadrature,
    check_ode_residuals,
    check_oracle_equivalence,
    check_integral_transcription,
    check_sign_equivalence,
    check_kernels,
)


def run_selftest(grid_n: int = 256, tol: float = 1e-8) -> list[CheckResult]:
    """Run every check; returns the per-check results in order."""
    return [check(grid_n, tol) for check in ALL_CHECKS]
