"""Relaxed graph area of angle-homogeneous BV maps on a disk.

The package works with piecewise BV curves on the circle, their winding
area, a discrete Plateau-type minimisation over disk meshes, and the
energy bookkeeping for the homogeneous extension u(x) = curve(x / |x|).
"""

from .curves import (
    Arc,
    CircleArcPath,
    ClosedPolyline,
    CumulativeVariation,
    Curve,
    CurveValidationError,
    Jump,
    PointPath,
    PolylinePath,
    ReparamProfile,
    VariationDecomposition,
    ZERO_MASS,
    completed_curve,
    evaluate,
    evaluate_many,
    l1_distance,
    linear_mass,
    mollify_sequence,
    reparam_profile,
    sampled_mass,
    total_variation,
    validate,
    variation_to,
)
from .curveio import (
    BUILTIN_NAMES,
    CurveFormatError,
    builtin_curve,
    constant_curve,
    dump_curve,
    load_curve,
    load_polyline,
    parse_curve,
    save_curve,
    save_polyline,
)
from .homogeneous import (
    EnergyReport,
    ExtensionParams,
    graph_area_term,
    radial_integral,
    relaxed_area,
    sample_extension,
    singular_term,
    tangential_variation,
    total_variation_Du,
)
from .meshing import TriMesh, make_disk_mesh
from .plateau import (
    DiscreteMap,
    MinimizeResult,
    PlateauCertificate,
    PlateauOptions,
    arclength_centroid,
    boundary_datum,
    homogeneous_init,
    jacobian_tv,
    jacobian_tv_minimize,
    minimize_for_datum,
    plateau_value,
)
from .relaxation import (
    RecoveryMismatchError,
    SequenceReport,
    SlicingReport,
    area_functional,
    minimize_for_profile,
    recovery_sequence,
    slicing_check,
    strict_convergence_report,
)
from .svgout import curve_svg, mesh_svg
from .winding import (
    Arrangement,
    ArrangementError,
    Face,
    GridEstimate,
    PointOnCurveError,
    build_arrangement,
    distance_to_curve,
    winding_area,
    winding_area_grid,
    winding_number,
    winding_number_many,
)

__all__ = [
    "Arc",
    "Arrangement",
    "ArrangementError",
    "BUILTIN_NAMES",
    "CircleArcPath",
    "ClosedPolyline",
    "CumulativeVariation",
    "Curve",
    "CurveFormatError",
    "CurveValidationError",
    "DiscreteMap",
    "EnergyReport",
    "ExtensionParams",
    "Face",
    "GridEstimate",
    "Jump",
    "MinimizeResult",
    "PlateauCertificate",
    "PlateauOptions",
    "PointOnCurveError",
    "PointPath",
    "PolylinePath",
    "RecoveryMismatchError",
    "ReparamProfile",
    "SequenceReport",
    "SlicingReport",
    "TriMesh",
    "VariationDecomposition",
    "ZERO_MASS",
    "arclength_centroid",
    "area_functional",
    "boundary_datum",
    "build_arrangement",
    "builtin_curve",
    "completed_curve",
    "constant_curve",
    "curve_svg",
    "distance_to_curve",
    "dump_curve",
    "evaluate",
    "evaluate_many",
    "graph_area_term",
    "homogeneous_init",
    "jacobian_tv",
    "jacobian_tv_minimize",
    "l1_distance",
    "linear_mass",
    "load_curve",
    "load_polyline",
    "make_disk_mesh",
    "mesh_svg",
    "minimize_for_datum",
    "minimize_for_profile",
    "mollify_sequence",
    "parse_curve",
    "plateau_value",
    "radial_integral",
    "recovery_sequence",
    "relaxed_area",
    "reparam_profile",
    "sample_extension",
    "sampled_mass",
    "save_curve",
    "save_polyline",
    "singular_term",
    "slicing_check",
    "strict_convergence_report",
    "tangential_variation",
    "total_variation",
    "total_variation_Du",
    "validate",
    "variation_to",
    "winding_area",
    "winding_area_grid",
    "winding_number",
    "winding_number_many",
]

__version__ = "0.1.0"
