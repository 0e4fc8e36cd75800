"""hopfgeo: computational geometry of the Hopf fibration.

Winding numbers and root counting on the complex plane, Moebius maps and
cross-ratios, circle inversion and Apollonian families, stereographic charts
in dimensions 1 to 3, quaternion rotations and their double cover of SO(3),
Hopf fibers with their tori, linking numbers and Villarceau circles, plus
deterministic scene export (JSON / OBJ / SVG), a command line, and a small
HTTP service.
"""

__version__ = "0.1.0"

from .complexplane import (
    ClosedPath,
    DegeneratePathError,
    PathError,
    PolarForm,
    Polynomial,
    UndersampledPathError,
    WindingResidualError,
    count_roots_by_winding,
    from_polar,
    map_path,
    outer_root_radius,
    roots_of_unity,
    to_polar,
    winding_number,
)
from .moebius import (
    INFINITY,
    DegenerateMapError,
    MoebiusMap,
    cross_ratio,
    cross_ratio_orbit,
    is_infinity,
    riemann_close,
)
from .inversion import (
    DisjointLociError,
    GeneralizedCircle,
    Sphere,
    apollonian_families,
    circles_orthogonal,
    compose_inversions,
    intersect,
    invert_circle,
    invert_point,
)
from .fitting import (
    Circle3Fit,
    TorusFit,
    fit_circle_2d,
    fit_circle_3d,
    fit_generalized_circle,
    fit_torus_of_revolution,
    subspace_residual,
    torus_implicit,
)
from .stereo import (
    CHART_S1,
    CHART_S2,
    CHART_S3,
    StereoChart,
    arc_distance,
    from_riemann,
    great_circle_image_residual,
    hypercube_edges,
    hypercube_scene,
    hypercube_vertices,
    is_great_circle_image,
    spherical_triangle_area,
    to_riemann,
)
from .quaternions import (
    ONE,
    I,
    J,
    K,
    Quaternion,
    UnitQuaternion,
    axis_angle,
    from_axis_angle,
    from_su2,
    rotate_left,
    rotate_right,
    so4_action,
    to_su2,
)
from .hopf import (
    FIBER_LINK_SIGN,
    QUAT_ALIGNMENT,
    QUAT_LEFT_CONVENTION,
    QUAT_RIGHT_CONVENTION,
    RIEMANN_CONVENTION,
    CurvesTouchError,
    FiberCurve,
    FiberNotOnTorusError,
    GreatCircleCheck,
    Handedness,
    HopfConvention,
    LatitudinalTorus,
    LinkingResidualError,
    S3Point,
    Variant,
    base_of,
    calibrate_quat_alignment,
    equatorial_section,
    fiber,
    gauss_linking_sum,
    handedness,
    hopf_map,
    hopf_map_coords,
    is_great_circle,
    latitudinal_torus,
    linking_number,
    project_fiber,
    quat_hopf,
    quat_hopf_raw,
    torus_profile_circles,
    villarceau_section,
    winding_slope,
)
from .scene import (
    SCENE_SCHEMA,
    SCENE_VERSION,
    Curve3,
    Mesh,
    PlanarCircle,
    PlanarLine,
    PlanarPath,
    SceneDocument,
    dumps_canonical,
    export_json,
    export_obj,
    export_svg,
    fmt9,
    import_json,
    planar_from_generalized,
    quantize,
    sample_sphere_mesh,
    sample_torus_mesh,
    validate_scene_dict,
)
