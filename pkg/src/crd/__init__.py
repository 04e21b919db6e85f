"""Cross-ratio dynamics on ideal polygons: the 2-2 correspondences, their Lax
matrices and conserved quantities, the Poisson pencil on the moduli space,
frieze-pattern charts, and the exceptional/loxogon menagerie."""

from .continuants import (
    closure_residuals,
    continuant,
    continuant_by_euler,
    c_product,
    f_k,
    identity_suite,
    is_closed,
    monodromy_closed_form,
    monodromy_from_c,
    parabolicity_residual,
    trace_coefficients,
)
from .dynamics import (
    BranchPolicy,
    OrbitState,
    RelationCount,
    RelationResult,
    alpha_related,
    aux_coordinates,
    bianchi_fourth,
    exceptional_classify,
    moduli_map,
    orbit,
    orbit_conservation_report,
    relation_residual,
    step,
    xi_field,
    xi_moduli,
)
from .errors import CrdError
from .lax import (
    IntegralReport,
    alternating_perimeter,
    axis,
    e_alpha,
    g_coefficients,
    ijk,
    integrals,
    lax_matrix,
    lax_normalized_trace,
    presymplectic_eval,
    presymplectic_kernel,
    presymplectic_matrix,
    trace_polynomial_value,
)
from .polygon import (
    Chart,
    CoordVector,
    TwistedPolygon,
    apply_moebius,
    chart_convert,
    cross_ratios,
    frieze_table,
    index_shift,
    lift_to_vectors,
    polygon_from_json,
    polygon_to_json,
    reconstruct,
)
from .projective import (
    INFINITY,
    Matrix2,
    MoebiusClass,
    MoebiusKind,
    ProjectivePoint,
    chordal,
    classify,
    complex_distance,
    cross_ratio,
    loxodromic_matrix,
    normalized_trace,
)
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"
