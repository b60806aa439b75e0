"""Spinning-light ray tracing on coadjoint orbits of the Euclidean group.

A ray with color p and spin s lives on an orbit with a twisted symplectic
structure.  Transport through a gradient-index medium follows the kernel
of the orbit form restricted by the medium; planar interfaces act through
the unique symplectomorphism compatible with the broken symmetries, which
reproduces the spin form of the Snell-Descartes laws together with a
transverse shift of the refracted ray (the optical Hall effect).
"""

from .curvature import (
    CurvatureData,
    christoffel,
    einstein_uu,
    g_unit,
    r_omega,
    ricci_scalar,
)
from .errors import (
    DegenerateKernelError,
    NotIncomingError,
    OutOfDomainError,
    SceneError,
    SpinCurvatureSingularityError,
    SpinrayError,
    TotalReflectionRequiredError,
)
from .fields import (
    ConstantIndex,
    GaussianBumpIndex,
    GridIndex,
    IndexField,
    LinearGradientIndex,
    VelocityData,
    dump_index_grid,
    load_index_grid,
    velocity_data,
)
from .orbits import (
    MomentumValue,
    OrbitInvariants,
    OrbitTangent,
    Ray,
    make_ray,
    momentum_map,
    orbit_tangent,
    ray_from_point_direction,
    spinless_potential,
    symplectic_form,
    tangent_basis,
    translate_ray,
    wave_plane_bracket,
)
from .propagation import (
    MODEL_FULL,
    MODEL_GENERAL,
    MODEL_LINEARIZED,
    MODEL_SPINLESS,
    KernelDirection,
    MetricState,
    PhotonState,
    Trajectory,
    canonical_model,
    direction_full_spin,
    direction_general_metric,
    direction_linearized,
    direction_spinless,
    integrate,
    kernel_residual,
    momentum_hat,
)
from .scattering import (
    MODE_REFLECTION,
    MODE_REFRACTION,
    MODE_TOTAL_REFLECTION,
    ConservationResiduals,
    Interface,
    ScatterCoefficients,
    ScatterOutcome,
    conservation_check,
    h_action,
    inverse_scatter,
    scatter,
    scatter_coefficients,
    snell_angles,
    symplecto_check,
    transverse_shift,
)
from .scene import (
    Box,
    HalfSpace,
    Limits,
    Medium,
    Scene,
    Source,
    SweepSpec,
    emit_scene,
    parse_scene,
    parse_sweep,
)
from .runner import CSV_COLUMNS, TraceResult, run_sweep, run_trace, sweep_csv, sweep_rows
from .checks import CheckResult, builtin_checks, report_from_results, scene_checks

__version__ = "0.1.0"

__all__ = [
    "Box",
    "CheckResult",
    "ConservationResiduals",
    "ConstantIndex",
    "CSV_COLUMNS",
    "CurvatureData",
    "DegenerateKernelError",
    "GaussianBumpIndex",
    "GridIndex",
    "HalfSpace",
    "IndexField",
    "Interface",
    "KernelDirection",
    "Limits",
    "Medium",
    "MetricState",
    "MODE_REFLECTION",
    "MODE_REFRACTION",
    "MODE_TOTAL_REFLECTION",
    "MODEL_FULL",
    "MODEL_GENERAL",
    "MODEL_LINEARIZED",
    "MODEL_SPINLESS",
    "MomentumValue",
    "NotIncomingError",
    "OrbitInvariants",
    "OrbitTangent",
    "OutOfDomainError",
    "PhotonState",
    "Ray",
    "Scene",
    "SceneError",
    "ScatterCoefficients",
    "ScatterOutcome",
    "Source",
    "SpinCurvatureSingularityError",
    "SpinrayError",
    "SweepSpec",
    "TotalReflectionRequiredError",
    "Trajectory",
    "TraceResult",
    "VelocityData",
    "builtin_checks",
    "canonical_model",
    "christoffel",
    "conservation_check",
    "direction_full_spin",
    "direction_general_metric",
    "direction_linearized",
    "direction_spinless",
    "dump_index_grid",
    "einstein_uu",
    "emit_scene",
    "g_unit",
    "h_action",
    "integrate",
    "inverse_scatter",
    "kernel_residual",
    "load_index_grid",
    "make_ray",
    "momentum_hat",
    "momentum_map",
    "orbit_tangent",
    "parse_scene",
    "parse_sweep",
    "r_omega",
    "ray_from_point_direction",
    "report_from_results",
    "ricci_scalar",
    "run_sweep",
    "run_trace",
    "scatter",
    "scatter_coefficients",
    "scene_checks",
    "snell_angles",
    "spinless_potential",
    "symplectic_form",
    "symplecto_check",
    "tangent_basis",
    "transverse_shift",
    "translate_ray",
    "velocity_data",
    "wave_plane_bracket",
]
