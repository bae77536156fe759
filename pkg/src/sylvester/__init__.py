"""Maxwell multipoles, Majorana constellations and Sylvester's theorem, numerically."""
from .harmonics import (
    GridResolutionError,
    NonIntegerDegree,
    SphereGrid,
    SpinState,
    eval_function,
    eval_Yjm,
    grid_for_degree,
    make_grid,
    project_onto_degree,
    random_real_state,
    random_state,
    real_harmonic_state,
)
from .majorana import (
    MajoranaConstellation,
    MajoranaPolynomial,
    PairingFailure,
    build_polynomial,
    constellation,
    find_roots,
    nilpotent_of,
    pair_antipodal,
    spherical_to_cartesian,
    spin1_roots_closed_form,
    time_reverse,
    verify_factorization,
)
from .multipole import (
    MultipoleSet,
    NotRealState,
    extend_via_kernel,
    extending_kernel,
    extract_multipoles,
    fold_via_kernel,
    reconstruct,
)
from .polyderiv import (
    HomogeneousPoly,
    RationalRadialFunction,
    directional_derivative,
    laplacian,
    multipole_derivative,
    restrict_to_sphere,
)
from .sphere import (
    INFINITY,
    EulerRotation,
    StereoPoint,
    UnitVector,
    angles_from_stereo,
    antipode,
    chordal_distance,
    rotate_vector,
    stereo_from_angles,
)
from .wigner import WignerD, rotate_state, wigner_d_element, wigner_D

__version__ = "0.1.0"

__all__ = [
    "GridResolutionError",
    "NonIntegerDegree",
    "SphereGrid",
    "SpinState",
    "eval_function",
    "eval_Yjm",
    "grid_for_degree",
    "make_grid",
    "project_onto_degree",
    "random_real_state",
    "random_state",
    "real_harmonic_state",
    "MajoranaConstellation",
    "MajoranaPolynomial",
    "PairingFailure",
    "build_polynomial",
    "constellation",
    "find_roots",
    "nilpotent_of",
    "pair_antipodal",
    "spherical_to_cartesian",
    "spin1_roots_closed_form",
    "time_reverse",
    "verify_factorization",
    "MultipoleSet",
    "NotRealState",
    "extend_via_kernel",
    "extending_kernel",
    "extract_multipoles",
    "fold_via_kernel",
    "reconstruct",
    "HomogeneousPoly",
    "RationalRadialFunction",
    "directional_derivative",
    "laplacian",
    "multipole_derivative",
    "restrict_to_sphere",
    "INFINITY",
    "EulerRotation",
    "StereoPoint",
    "UnitVector",
    "angles_from_stereo",
    "antipode",
    "chordal_distance",
    "rotate_vector",
    "stereo_from_angles",
    "WignerD",
    "rotate_state",
    "wigner_d_element",
    "wigner_D",
]
