"""Shared oracles for the test suite.

These are deliberately independent of the package's own numerics:
adaptive Simpson quadrature for integrals, classical RK4 for the Jacobi
ODE system, central differences for derivatives.
"""

import numpy as np


def adaptive_simpson(f, a, b, tol=1e-12, depth=48):
    """Recursive adaptive Simpson quadrature with Richardson correction."""

    def estimate(fa, fm, fb, left, right):
        return (right - left) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a_, b_, fa, fm, fb, whole, tol_, d):
        m = 0.5 * (a_ + b_)
        flm, frm = f(0.5 * (a_ + m)), f(0.5 * (m + b_))
        left = estimate(fa, flm, fm, a_, m)
        right = estimate(fm, frm, fb, m, b_)
        if d <= 0 or abs(left + right - whole) <= 15.0 * tol_:
            return left + right + (left + right - whole) / 15.0
        return recurse(a_, m, fa, flm, fm, left, 0.5 * tol_, d - 1) + recurse(
            m, b_, fm, frm, fb, right, 0.5 * tol_, d - 1
        )

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    return recurse(a, b, fa, fm, fb, estimate(fa, fm, fb, a, b), tol, depth)


def simpson_K(kappa, tol=1e-13):
    """Legendre-form complete integral of the first kind by quadrature."""
    return adaptive_simpson(
        lambda t: 1.0 / np.sqrt(1.0 - (kappa * np.sin(t)) ** 2), 0.0, np.pi / 2, tol
    )


def simpson_E(kappa, tol=1e-13):
    """Legendre-form complete integral of the second kind by quadrature."""
    return adaptive_simpson(
        lambda t: np.sqrt(1.0 - (kappa * np.sin(t)) ** 2), 0.0, np.pi / 2, tol
    )


def rk4_jacobi(u, kappa, step=1e-4):
    """Integrate sn' = cn dn, cn' = -sn dn, dn' = -kappa^2 sn cn from 0."""
    k2 = kappa * kappa

    def rhs(y):
        sn, cn, dn = y
        return np.array([cn * dn, -sn * dn, -k2 * sn * cn])

    n = int(round(abs(u) / step))
    h = u / n
    y = np.array([0.0, 1.0, 1.0])
    for _ in range(n):
        k1 = rhs(y)
        k2_ = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2_)
        k4 = rhs(y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2_ + 2.0 * k3 + k4)
    return y


def central_diff(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def cosine_similarity(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return abs(float(u @ v)) / (np.linalg.norm(u) * np.linalg.norm(v))
