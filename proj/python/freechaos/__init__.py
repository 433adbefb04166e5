"""Moments of free Wigner chaos elements from finite-rank kernels.

Non-crossing partition counts (Catalan, Riordan), the free moment-cumulant
transform, semicircle and Marchenko-Pastur laws, kernel contractions, chaos
moments with their fourth-moment statistic, and a full-Fock-space oracle.
"""

from freechaos._core import (
    BoundsError,
    CapacityError,
    ClassificationError,
    DomainError,
    Kernel,
    NormalizationError,
    QuadratureFailure,
    ShapeError,
    adjoint,
    axpy,
    catalan,
    centered_poisson_moment,
    contract,
    convergence_scan,
    cumulants_from_moments,
    density,
    diagonal_kernel,
    enumerate_nc,
    enumerate_sequences,
    fourth_moment_statistic,
    free_poisson_cumulants,
    inner_product,
    is_mirror_symmetric,
    is_noncrossing,
    variance_identity,
    moments_from_cumulants,
    oracle_moment,
    poisson_defect,
    poisson_kernel,
    quadrature_moment,
    read_kernel_file,
    riordan,
    riordan_refined,
    scale,
    wigner_moment,
    wigner_product_expand,
    write_kernel_file,
)

__all__ = [
    "BoundsError",
    "CapacityError",
    "ClassificationError",
    "DomainError",
    "Kernel",
    "NormalizationError",
    "QuadratureFailure",
    "ShapeError",
    "adjoint",
    "axpy",
    "catalan",
    "centered_poisson_moment",
    "contract",
    "convergence_scan",
    "cumulants_from_moments",
    "density",
    "diagonal_kernel",
    "enumerate_nc",
    "enumerate_sequences",
    "fourth_moment_statistic",
    "free_poisson_cumulants",
    "inner_product",
    "is_mirror_symmetric",
    "is_noncrossing",
    "variance_identity",
    "moments_from_cumulants",
    "oracle_moment",
    "poisson_defect",
    "poisson_kernel",
    "quadrature_moment",
    "read_kernel_file",
    "riordan",
    "riordan_refined",
    "scale",
    "wigner_moment",
    "wigner_product_expand",
    "write_kernel_file",
]

__version__ = "0.1.0"
