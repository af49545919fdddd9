"""ellwaves: periodic elliptic-function waves, their Hill/Lame spectra,
and the transverse spectral instability of the KP-type and NLS-type
linearizations around them."""

from .criterion import (
    CriterionNotApplicableError,
    CriterionReport,
    IntegralTable,
    closed_integrals_kdv,
    closed_integrals_mkdv,
    defocusing_check,
    defocusing_sides,
    h_curve,
    periodic_quadrature,
    quadrature_integrals,
    rayleigh_test,
    select_test_pairs,
)
from .elliptic import EllipticModulus, JacobiTriple, complete_E, complete_K, jacobi
from .hill import (
    DenseOperator,
    PencilConvergenceError,
    PeriodicGrid,
    SpectrumResult,
    assemble_hill,
    diff_matrix,
    eigs_pencil,
    eigs_symmetric,
)
from .lame import (
    VALID_OPERATORS,
    EigenPair,
    OperatorKind,
    PhysicalOperator,
    lame2_eigs,
    lame6_eigs,
    lame12_eigs,
    physical_operator,
    physical_spectrum,
)
from .transverse import (
    SIGMA_LADDER,
    BranchPoint,
    CriterionNotMetError,
    KernelDimensionError,
    KernelReport,
    PencilKind,
    PencilResult,
    TransversePencil,
    build_pencil,
    continue_branch,
    critical_wavenumber,
    kernel_residual,
    pencil_operators,
    verify_kernel_conditions,
)
from .waves import WaveFamily, WaveProfile, build

__version__ = "0.1.0"

__all__ = [
    "BranchPoint",
    "CriterionNotApplicableError",
    "CriterionNotMetError",
    "CriterionReport",
    "DenseOperator",
    "EigenPair",
    "EllipticModulus",
    "IntegralTable",
    "JacobiTriple",
    "KernelDimensionError",
    "KernelReport",
    "OperatorKind",
    "PencilConvergenceError",
    "PencilKind",
    "PencilResult",
    "PeriodicGrid",
    "PhysicalOperator",
    "SIGMA_LADDER",
    "SpectrumResult",
    "TransversePencil",
    "VALID_OPERATORS",
    "WaveFamily",
    "WaveProfile",
    "assemble_hill",
    "build",
    "build_pencil",
    "closed_integrals_kdv",
    "closed_integrals_mkdv",
    "complete_E",
    "complete_K",
    "continue_branch",
    "critical_wavenumber",
    "defocusing_check",
    "defocusing_sides",
    "diff_matrix",
    "eigs_pencil",
    "eigs_symmetric",
    "h_curve",
    "jacobi",
    "kernel_residual",
    "lame12_eigs",
    "lame2_eigs",
    "lame6_eigs",
    "pencil_operators",
    "periodic_quadrature",
    "physical_operator",
    "physical_spectrum",
    "quadrature_integrals",
    "rayleigh_test",
    "select_test_pairs",
    "verify_kernel_conditions",
]
