"""Complete elliptic integrals and Jacobi elliptic functions.

Everything downstream (wave profiles, closed-form spectra, integral
tables) sits on these primitives, so they are computed to near machine
precision: the arithmetic-geometric mean for K and E, and the descending
Landen transformation (DLMF 22.20(ii)) for sn, cn, dn.

Convention: the elliptic modulus ``kappa`` in (0, 1) is used throughout,
never the parameter m = kappa**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

# Convergence threshold on the descending modulus and the level cap.
# The AGM converges quadratically; 32 levels is far beyond what any
# kappa in (0, 1) representable in float64 needs.
_AGM_TOL = 1e-15
_MAX_LEVELS = 32


@dataclass(frozen=True)
class EllipticModulus:
    """Validated elliptic modulus kappa in the open interval (0, 1).

    ``kappa_prime`` is the complementary modulus sqrt(1 - kappa**2);
    kappa**2 + kappa_prime**2 = 1 holds to machine precision.  The
    endpoints are rejected: at kappa = 0 and kappa = 1 the wave families
    degenerate to trigonometric/hyperbolic limits outside this package's
    scope.
    """

    kappa: float
    kappa_prime: float = field(init=False)

    def __post_init__(self) -> None:
        kappa = float(self.kappa)
        if not 0.0 < kappa < 1.0:
            raise ValueError(f"elliptic modulus must lie in (0, 1), got {kappa!r}")
        object.__setattr__(self, "kappa", kappa)
        # (1-k)(1+k) avoids cancellation as kappa -> 1
        object.__setattr__(self, "kappa_prime", math.sqrt((1.0 - kappa) * (1.0 + kappa)))


class JacobiTriple(NamedTuple):
    """Values (sn, cn, dn) at a common argument and modulus."""

    sn: float | np.ndarray
    cn: float | np.ndarray
    dn: float | np.ndarray


def _agm_scale(kappa: float, kappa_prime: float):
    """Run the AGM from (1, kappa_prime); return the a_n, c_n sequences."""
    a, b = 1.0, kappa_prime
    a_seq = [a]
    c_seq = [kappa]
    for _ in range(_MAX_LEVELS):
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        a_seq.append(a)
        c_seq.append(c)
        if abs(c) <= _AGM_TOL * a:
            return a_seq, c_seq
    raise RuntimeError("AGM/Landen recursion failed to converge in 32 levels")


def complete_K(m: EllipticModulus) -> float:
    """Complete elliptic integral of the first kind, K(kappa).

    K(kappa) = integral_0^{pi/2} dtheta / sqrt(1 - kappa^2 sin^2 theta),
    evaluated as pi / (2 agm(1, kappa')).  Relative accuracy ~1e-15.
    """
    a_seq, _ = _agm_scale(m.kappa, m.kappa_prime)
    return math.pi / (2.0 * a_seq[-1])


def complete_E(m: EllipticModulus) -> float:
    """Complete elliptic integral of the second kind, E(kappa).

    E(kappa) = integral_0^{pi/2} sqrt(1 - kappa^2 sin^2 theta) dtheta,
    from the AGM c-sum  E = K (1 - sum_n 2^{n-1} c_n^2).
    """
    a_seq, c_seq = _agm_scale(m.kappa, m.kappa_prime)
    csum = sum(2.0 ** (n - 1) * c * c for n, c in enumerate(c_seq))
    K = math.pi / (2.0 * a_seq[-1])
    return K * (1.0 - csum)


def jacobi(u, m: EllipticModulus) -> JacobiTriple:
    """Jacobi elliptic functions (sn, cn, dn)(u; kappa).

    Descending Landen transformation: the amplitudes phi_n are seeded at
    the deepest AGM level and folded back through
    phi_{n-1} = (phi_n + arcsin((c_n/a_n) sin phi_n)) / 2, after which
    sn = sin phi_0 and cn = cos phi_0.  dn is recovered from the exact
    identity dn^2 = kappa'^2 + kappa^2 cn^2, which is cancellation-free
    and keeps the correct (always positive) sign; the textbook quotient
    cos phi_0 / cos(phi_1 - phi_0) is 0/0 at odd multiples of K.

    The argument is first reduced modulo the common period 4K, so the
    result is accurate for any finite u (in particular over |u| <= 8K).
    Accepts a scalar or an ndarray argument; the triple's fields match.
    """
    a_seq, c_seq = _agm_scale(m.kappa, m.kappa_prime)
    depth = len(a_seq) - 1
    quarter = math.pi / (2.0 * a_seq[-1])

    u_arr = np.asarray(u, dtype=float)
    scalar = u_arr.ndim == 0
    u_red = u_arr - 4.0 * quarter * np.round(u_arr / (4.0 * quarter))

    # The amplitude recursion runs in extended precision: the arcsin
    # roundoff of ~8 folding levels otherwise leaves ~1e-14 noise, which
    # downstream spectral second derivatives amplify by k_max^2.
    work = np.longdouble
    one = work(1.0)
    phi = (work(2.0) ** depth) * work(a_seq[depth]) * u_red.astype(work)
    for i in range(depth, 0, -1):
        ratio = work(c_seq[i]) / work(a_seq[i])
        s = np.clip(ratio * np.sin(phi), -one, one)
        phi = work(0.5) * (phi + np.arcsin(s))

    sn = np.sin(phi).astype(float)
    cn = np.cos(phi).astype(float)
    dn = np.sqrt(m.kappa_prime**2 + (m.kappa * cn) ** 2)
    if scalar:
        return JacobiTriple(float(sn), float(cn), float(dn))
    return JacobiTriple(sn, cn, dn)
