"""Closed-form spectra of the three Lame-potential operators and their
rescaling to the physical linearized operators of each wave family.

The three Schroedinger operators with Lame potentials n(n+1) kappa^2 sn^2,

    Lambda_12 = -d^2/dy^2 + 12 kappa^2 sn^2 - 4 kappa^2 - 4   on [0, 2K],
    Lambda_6  = -d^2/dy^2 +  6 kappa^2 sn^2                   on [0, 4K],
    Lambda_2  = -d^2/dy^2 +  2 kappa^2 sn^2                   on [0, 4K],

have their low periodic eigenpairs in closed form.  Every linearized
operator of the wave families is an affine rescaling of one of them under
y = alpha x, which is what ``physical_spectrum`` returns.

Eigenfunctions are returned unnormalized, exactly as the classical
formulas state them; normalization is the caller's concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .elliptic import EllipticModulus, complete_K, jacobi
from .waves import WaveFamily, WaveProfile


class OperatorKind(Enum):
    """Which linearized operator of a family is meant."""

    L = "L"
    L_MINUS = "L-"
    L_PLUS = "L+"


#: (family tag) -> operator kinds with a closed-form spectrum
VALID_OPERATORS: dict[WaveFamily, tuple[OperatorKind, ...]] = {
    WaveFamily.CNOIDAL_KDV: (OperatorKind.L,),
    WaveFamily.DNOIDAL_MKDV: (OperatorKind.L,),
    WaveFamily.SNOIDAL_DEFOCUSING_MKDV: (OperatorKind.L,),
    WaveFamily.CNOIDAL_QUADRATIC_NLS: (OperatorKind.L_MINUS, OperatorKind.L_PLUS),
    WaveFamily.DNOIDAL_CUBIC_NLS: (OperatorKind.L_MINUS, OperatorKind.L_PLUS),
}


@dataclass(frozen=True)
class EigenPair:
    """One closed-form eigenvalue with its analytic eigenfunction sampler.

    ``period`` is the length of the interval on which the eigenfunction is
    periodic (the operator's stated domain).
    """

    eigenvalue: float
    eigenfunction: Callable[[np.ndarray], np.ndarray]
    index: int
    period: float
    multiplicity: str = "simple"


@dataclass(frozen=True)
class PhysicalOperator:
    """A family's linearized operator -d^2/dx^2 + q(x) with its domain."""

    family: WaveFamily
    which: OperatorKind
    profile: WaveProfile
    potential: Callable[[np.ndarray], np.ndarray]
    domain_period: float


def _lame6_root(k: float) -> float:
    return math.sqrt(1.0 - k * k + k**4)


def _lame12_root(k: float) -> float:
    return math.sqrt(1.0 - k * k + 4.0 * k**4)


def lame12_eigs(kappa: EllipticModulus) -> list[EigenPair]:
    """First three periodic eigenpairs of Lambda_12 on [0, 2K].

    mu_0 = k^2 - 2 - 2 sqrt(1 - k^2 + 4 k^4) < 0,
    mu_1 = 0,
    mu_2 = k^2 - 2 + 2 sqrt(1 - k^2 + 4 k^4) > 0,
    with dn-based eigenfunctions; all simple.
    """
    k = kappa.kappa
    s = _lame12_root(k)
    period = 2.0 * complete_K(kappa)
    b_minus = 1.0 + 2.0 * k * k - s
    b_plus = 1.0 + 2.0 * k * k + s

    def psi0(y, _b=b_minus, _m=kappa):
        sn, _, dn = jacobi(y, _m)
        return dn * (1.0 - _b * sn**2)

    def psi1(y, _m=kappa):
        sn, cn, dn = jacobi(y, _m)
        return dn * sn * cn

    def psi2(y, _b=b_plus, _m=kappa):
        sn, _, dn = jacobi(y, _m)
        return dn * (1.0 - _b * sn**2)

    return [
        EigenPair(k * k - 2.0 - 2.0 * s, psi0, 0, period),
        EigenPair(0.0, psi1, 1, period),
        EigenPair(k * k - 2.0 + 2.0 * s, psi2, 2, period),
    ]


def lame6_eigs(kappa: EllipticModulus) -> list[EigenPair]:
    """First five periodic eigenpairs of Lambda_6 on [0, 4K], all simple.

    nu_0 = 2 + 2k^2 - 2 sqrt(1 - k^2 + k^4)    1 - (1 + k^2 - r) sn^2
    nu_1 = 1 + k^2                             cn dn  ( = sn')
    nu_2 = 1 + 4k^2                            sn dn  ( = -cn')
    nu_3 = 4 + k^2                             sn cn  ( = -dn'/k^2)
    nu_4 = 2 + 2k^2 + 2 sqrt(1 - k^2 + k^4)    1 - (1 + k^2 + r) sn^2
    """
    k = kappa.kappa
    r = _lame6_root(k)
    period = 4.0 * complete_K(kappa)
    g_minus = 1.0 + k * k - r
    g_plus = 1.0 + k * k + r

    def psi0(y, _g=g_minus, _m=kappa):
        sn = jacobi(y, _m).sn
        return 1.0 - _g * sn**2

    def psi1(y, _m=kappa):
        _, cn, dn = jacobi(y, _m)
        return cn * dn

    def psi2(y, _m=kappa):
        sn, _, dn = jacobi(y, _m)
        return sn * dn

    def psi3(y, _m=kappa):
        sn, cn, _ = jacobi(y, _m)
        return sn * cn

    def psi4(y, _g=g_plus, _m=kappa):
        sn = jacobi(y, _m).sn
        return 1.0 - _g * sn**2

    values = [
        2.0 + 2.0 * k * k - 2.0 * r,
        1.0 + k * k,
        1.0 + 4.0 * k * k,
        4.0 + k * k,
        2.0 + 2.0 * k * k + 2.0 * r,
    ]
    funcs = [psi0, psi1, psi2, psi3, psi4]
    return [EigenPair(v, f, i, period) for i, (v, f) in enumerate(zip(values, funcs))]


def lame2_eigs(kappa: EllipticModulus) -> list[EigenPair]:
    """First three periodic eigenpairs of Lambda_2 on [0, 4K]:
    (k^2, dn), (1, cn), (1 + k^2, sn), all simple."""
    k = kappa.kappa
    period = 4.0 * complete_K(kappa)

    def theta0(y, _m=kappa):
        return jacobi(y, _m).dn

    def theta1(y, _m=kappa):
        return jacobi(y, _m).cn

    def theta2(y, _m=kappa):
        return jacobi(y, _m).sn

    return [
        EigenPair(k * k, theta0, 0, period),
        EigenPair(1.0, theta1, 1, period),
        EigenPair(1.0 + k * k, theta2, 2, period),
    ]


def physical_operator(profile: WaveProfile, which: OperatorKind) -> PhysicalOperator:
    """Assemble the potential q(x) of a family's linearized operator.

    Potentials:
      cnoidal KdV        L   q = c - phi
      dnoidal mKdV       L   q = c - 3 phi^2
      snoidal def. mKdV  L   q = c + 3 phi^2
      quadratic NLS      L-  q = omega - 2|phi|     L+  q = omega - |phi|
      cubic NLS          L-  q = omega - 3 phi^2    L+  q = omega - phi^2

    The domain is one wave period except for the cubic-NLS L+, whose cn/sn
    eigenfunctions are periodic only over two wave periods (4K in y); its
    operator therefore carries domain_period = 2T.
    """
    fam = profile.family
    if which not in VALID_OPERATORS[fam]:
        valid = ", ".join(k.value for k in VALID_OPERATORS[fam])
        raise ValueError(
            f"family {fam.value!r} has no operator {which.value!r}; valid: {valid}"
        )
    c = profile.speed
    if fam is WaveFamily.CNOIDAL_KDV:
        q = lambda x: c - profile.value(x)
    elif fam is WaveFamily.DNOIDAL_MKDV:
        q = lambda x: c - 3.0 * profile.value(x) ** 2
    elif fam is WaveFamily.SNOIDAL_DEFOCUSING_MKDV:
        q = lambda x: c + 3.0 * profile.value(x) ** 2
    elif fam is WaveFamily.CNOIDAL_QUADRATIC_NLS:
        if which is OperatorKind.L_MINUS:
            q = lambda x: c - 2.0 * profile.value(x)
        else:
            q = lambda x: c - profile.value(x)
    else:  # cubic NLS
        if which is OperatorKind.L_MINUS:
            q = lambda x: c - 3.0 * profile.value(x) ** 2
        else:
            q = lambda x: c - profile.value(x) ** 2

    domain = profile.period
    if fam is WaveFamily.DNOIDAL_CUBIC_NLS and which is OperatorKind.L_PLUS:
        domain = 2.0 * profile.period
    return PhysicalOperator(fam, which, profile, q, domain)


def _rescale(pairs: list[EigenPair], shift: float, profile: WaveProfile,
             domain: float) -> list[EigenPair]:
    """Map Lame eigenpairs (nu, psi(y)) to (alpha^2 (nu - shift), psi(alpha x))."""
    a = profile.alpha
    out = []
    for i, p in enumerate(pairs):
        f = (lambda x, _f=p.eigenfunction: _f(a * np.asarray(x, dtype=float)))
        out.append(EigenPair(a * a * (p.eigenvalue - shift), f, i, domain))
    return out


def physical_spectrum(op: PhysicalOperator) -> list[EigenPair]:
    """Closed-form low eigenpairs of a physical operator, in x variables.

    Each family's operator equals alpha^2 (Lambda - shift) under y = alpha x:

      cnoidal KdV   L   = alpha^2 Lambda_12             -> alpha^2 mu_n
      quadratic NLS L-  = alpha^2 Lambda_12             -> alpha^2 mu_n
      quadratic NLS L+  = alpha^2 (Lambda_6 - nu_0)     -> 0, ...      [2K-periodic part]
      dnoidal mKdV  L   = alpha^2 (Lambda_6 - nu_3)     -> lambda_1 = 0 at nu_3
      cubic NLS     L-  = alpha^2 (Lambda_6 - nu_3)     -> same
      snoidal mKdV  L   = alpha^2 (Lambda_6 - nu_1)     -> all five nu rows
      cubic NLS     L+  = alpha^2 (Lambda_2 - eps_0)    -> 0, a^2(1-k^2), a^2

    Only the eigenfunctions periodic on the operator's domain are listed,
    so the indices match the ascending numerical spectrum directly.
    """
    fam, which, profile = op.family, op.which, op.profile
    kappa = profile.kappa
    if fam is WaveFamily.CNOIDAL_KDV or (
        fam is WaveFamily.CNOIDAL_QUADRATIC_NLS and which is OperatorKind.L_MINUS
    ):
        return _rescale(lame12_eigs(kappa), 0.0, profile, op.domain_period)
    if fam is WaveFamily.CNOIDAL_QUADRATIC_NLS:  # L_PLUS
        six = lame6_eigs(kappa)
        pairs = [six[0], six[3], six[4]]  # the 2K-periodic rows
        return _rescale(pairs, six[0].eigenvalue, profile, op.domain_period)
    if fam in (WaveFamily.DNOIDAL_MKDV, WaveFamily.DNOIDAL_CUBIC_NLS) and (
        which in (OperatorKind.L, OperatorKind.L_MINUS)
    ):
        six = lame6_eigs(kappa)
        pairs = [six[0], six[3], six[4]]  # the 2K-periodic rows
        return _rescale(pairs, six[3].eigenvalue, profile, op.domain_period)
    if fam is WaveFamily.SNOIDAL_DEFOCUSING_MKDV:
        six = lame6_eigs(kappa)
        return _rescale(six, six[1].eigenvalue, profile, op.domain_period)
    # cubic NLS L_PLUS on two wave periods
    two = lame2_eigs(kappa)
    return _rescale(two, two[0].eigenvalue, profile, op.domain_period)
