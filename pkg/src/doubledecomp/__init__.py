"""Sublattice filtrations, elliptic kernels and the rational maps between them."""
from .elliptic import (
    DEFAULT_SETTINGS,
    AmbientLattice,
    EvalSettings,
    Modulus,
    complete_elliptic_K,
    jacobi_sn,
    jacobi_sncndn,
    rectangle_map,
    rectangle_map_inverse,
    weierstrass_p,
    weierstrass_p_oracle,
)
from .errors import *  # noqa: F401,F403
from .lattice import (
    DecompositionTable,
    LatticePath,
    PrimeFiltration,
    SquareMove,
    SublatticeBasis,
    build_table,
    enumerate_prime_sublattices,
    hermite_canonical,
    index,
    intersect,
    path_area,
    path_deform,
    prime_filtration,
    smith_normal_form,
)
from .rational import (
    MobiusMap,
    RationalFunction,
    compose,
    double_decomposition,
    nesting_check,
    recover_map,
    recover_map_report,
    verify_path_decomposition,
    zolotarev_as_rational,
    zolotarev_eval,
)

__version__ = "0.1.0"
