"""Numerical engine for semi-Riemannian manifolds carrying metric mixed
3-structures, with submanifold calculus and a residual-report verifier.

The package builds three families of model spaces (flat para-hyperhermitian
space, pseudo-spheres with mixed 3-Sasakian structures, flat mixed
3-cosymplectic space), runs tensor calculus on explicit immersions into
them, and checks every computable structural identity at configurable
tolerance tiers.  The ``mixed3`` CLI fronts the catalog and verifier.
"""

from .ambient import (
    AmbientSpace,
    MixedThreeStructure,
    ParaHypercomplexTriple,
    SpaceKind,
    ambient_riemann,
    ambient_riemann_fd,
    covariant_derivative,
    make_flat_cosymplectic,
    make_flat_para_hyperhermitian,
    make_para_hypercomplex,
    make_pseudosphere,
    ricci_and_einstein,
)
from .config import Config, derive_rng, load_config_file
from .errors import (
    DegenerateInducedMetric,
    DegeneratePlane,
    DegenerateSubspace,
    DimensionMismatch,
    FrameConstructionFailure,
    GeometryError,
    NotNormal,
    NullDirection,
    PlaneNotInvariant,
    PointOffManifold,
    RankDeficientJacobian,
    StructureAxiomFailure,
    StructureUnavailable,
    SubspaceNotTotallyReal,
    UnknownCheckId,
)
from .linalg import (
    SignatureMetric,
    Subspace,
    inner,
    orthogonal_complement,
    project,
    pseudo_orthonormalize,
    signature_of,
)
from .structures import (
    AxiomResiduals,
    ParallelismResiduals,
    StructureClass,
    canonical_frame,
    check_axioms,
    check_parallelism_class,
)
from .submanifold import (
    Classification,
    Immersion,
    IntrinsicCurvature,
    PointFrame,
    ProbeMode,
    SubmanifoldKind,
    Tangency,
    classify,
    distribution_bracket_probe,
    frame_at,
    gauss_reconstruction_residual,
    induced_parallelism_residual,
    intrinsic_curvature,
    mean_curvature,
    normal_connection,
    normal_curvature,
    normal_part,
    ricci_equation_discrepancy,
    second_fundamental_form,
    sectional_curvature,
    shape_operator,
    tangential_part,
    umbilic_residual,
    weingarten_shape,
)
from .catalog import (
    CatalogEntry,
    ExpectedProfile,
    clifford_torus,
    cosymplectic_leaf,
    cosymplectic_tangent_block,
    entry_ids,
    flat_torus,
    get_entry,
    great_sphere,
    real_sphere,
    registry,
)
from .verifier import (
    CheckReport,
    CheckSpec,
    all_check_ids,
    get_check,
    reports_payload,
    run,
    run_detailed,
)

__version__ = "0.1.0"
