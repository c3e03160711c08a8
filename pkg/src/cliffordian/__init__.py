"""Exact slice regular polynomial calculus over the Clifford algebras R_m.

Everything runs in arbitrary-precision rational arithmetic: multivectors,
stem functions, the coordinate-wise differential operator oracle and the
fast Laplacian-power formulas all agree bit for bit or not at all.
"""

from .algebra import (
    Algebra,
    ConeDecomposition,
    ConeKind,
    Multivector,
    blade_indices,
    blade_name,
    blade_product,
)
from .kernel import (
    KernelReport,
    ReconstructionInput,
    extract_reconstruction,
    harmonicity_check,
    in_kernel,
    ode_residual,
    random_multivector,
    random_slice_poly,
    reconstruct_entire,
    spherical_reconstruction_roundtrip,
    verify_kernel_characterization,
)
from .mpoly import DiracConvention, MultiPoly, expand_slice_poly
from .operators import (
    CancellationError,
    CoeffTable,
    dirac_laplacian,
    dirac_slice,
    falling_factorial,
    falling_factorial_sum,
    fueter_sce_check,
    laplacian_coeff,
    laplacian_coeff_tables,
    laplacian_power_even_stem,
    laplacian_power_spherical,
    sce_prefactor,
)
from .stems import (
    BiPoly,
    GammaPoly,
    Parity,
    SlicePoly,
    StemPair,
    slice_eval,
    spherical_derivative,
    stem_components,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "BiPoly",
    "CancellationError",
    "CoeffTable",
    "ConeDecomposition",
    "ConeKind",
    "DiracConvention",
    "GammaPoly",
    "KernelReport",
    "MultiPoly",
    "Multivector",
    "Parity",
    "ReconstructionInput",
    "SlicePoly",
    "StemPair",
    "blade_indices",
    "blade_name",
    "blade_product",
    "dirac_laplacian",
    "dirac_slice",
    "expand_slice_poly",
    "extract_reconstruction",
    "falling_factorial",
    "falling_factorial_sum",
    "fueter_sce_check",
    "harmonicity_check",
    "in_kernel",
    "laplacian_coeff",
    "laplacian_coeff_tables",
    "laplacian_power_even_stem",
    "laplacian_power_spherical",
    "ode_residual",
    "random_multivector",
    "random_slice_poly",
    "reconstruct_entire",
    "sce_prefactor",
    "slice_eval",
    "spherical_derivative",
    "spherical_reconstruction_roundtrip",
    "stem_components",
    "verify_kernel_characterization",
]
