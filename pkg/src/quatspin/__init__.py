"""Exact verification toolkit for quaternionic spinor algebra.

Builds concrete Clifford models of R^{4m} with a compatible hyperkaehler
triple, decomposes the spinor module into joint weight blocks, checks the
operator identities behind the twistor projector calculus with exact
arithmetic, reproduces the block transition constants, and tabulates the
resulting Dirac eigenvalue lower-bound coefficients.
"""

from .errors import (
    QuatspinError,
    DimensionError,
    DomainError,
    SpectrumError,
    IdentityFailure,
    ResourceLimitError,
)
from .exact import (
    ExactScalar,
    DenseMatrix,
    mat_mul,
    lagrange_eigenprojectors,
    column_space_basis,
    FLOAT_TOL,
)
from .clifford import (
    CliffordModel,
    build_clifford_model,
    corrupt_gamma,
    vector_action,
    basis_vector,
    complex_vector,
)
from .quaternionic import (
    HyperkahlerTriple,
    KaehlerOperators,
    AdaptedBasis,
    build_standard_triple,
    kaehler_form,
    kraines_form,
    build_kaehler_operators,
    build_adapted_basis,
    structure_report,
)
from .decomposition import (
    Block,
    JointDecomposition,
    decompose,
    block_dimension,
    lattice_allows,
    omega_eigenvalue,
    weight_eigenvalue,
    decomposition_report,
)
from .projectors import (
    ProjectorCalculus,
    j_operator,
    q_plus,
    q_minus,
    p_plus,
    p_minus,
    compute_A,
    closed_form_A,
    verify_lemma_identities,
    constants_report,
)
from .report import CheckEntry, VerificationReport, residual_entry, info_entry
from .bounds import (
    BoundCoefficient,
    BoundRow,
    BoundReport,
    bound_case_A,
    bound_case_B,
    bound_property_report,
    universal_bound,
    universal_coefficient,
    comparison_bounds,
    build_bound_report,
)
from .so3 import (
    Irrep,
    Rotation,
    RotationSearch,
    build_irrep,
    rotation_from_quaternion,
    identity_rotation,
    random_rotation,
    random_vector,
    check_rotation,
    rotated_generator,
    top_weight_projector,
    highest_weight_component,
    find_rotation_with_top_component,
    irrep_report,
)

__version__ = "0.1.0"
