"""Multiphoton states with several degrees of freedom: permutation symmetry,
inter-DOF entanglement and NOON-projection interference."""

from ._kernels import backend_name
from .errors import (
    CapacityError,
    GridError,
    NetworkError,
    ParseError,
    PhotonDofError,
    ProfileError,
    SchemaError,
    SymmetryError,
    ZeroStateError,
)
from .fock import (
    CreationMonomial,
    DofSchema,
    FirstQuantizedTensor,
    FockKet,
    StateVector,
    add,
    apply_creation_monomial,
    apply_polynomial,
    from_first_quantized,
    inner_product,
    monomial,
    normalize,
    scale,
    to_first_quantized,
    vacuum,
)
from .fringe import FringeResult, fringe_sweep, harmonic_projection, visibility_prediction
from .optics import (
    DetectorLayout,
    LinearNetwork,
    apply_network,
    build_ghz_projection_network,
    build_noon_projection_network,
    coincidence_probability,
    noon_operator_expectation,
    single_photon_map,
)
from .states import (
    KValue,
    SpectralProfile,
    build_four_photon_parts,
    build_ghz,
    build_noon,
    build_pdc_four_photon,
    build_pdc_two_photon,
    build_singlet,
    compute_K,
    make_profile,
)
from .symmetry import (
    DofPartition,
    SchmidtReport,
    check_bosonic_symmetry,
    check_single_dof_symmetry,
    project_doubly_symmetric,
    schmidt_analysis,
)

__version__ = "0.1.0"
