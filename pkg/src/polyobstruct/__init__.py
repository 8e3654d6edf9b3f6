"""Exact-arithmetic obstructions for symplectic embeddings of stabilized polydiscs."""

from .decide import (
    EmbeddingFunctionValue,
    Reason,
    ReductionOutcome,
    Verdict,
    decide_4d,
    decide_polydisc_pair,
    decide_stabilized,
    embedding_function,
    hutchings_admissible,
    hutchings_upper_bound,
    nonsqueezing_obstruction,
    reduce_to_big_x,
    replay_reduction,
)
from .domains import (
    Ellipsoid,
    Polydisc,
    Regime,
    TorusBox,
    ellipsoid_fits_box,
    select_regime,
    skinny_capacities,
    skinny_ellipsoid,
)
from .exactnum import (
    ETA,
    PerturbedRational,
    ceil_generic,
    floor_generic,
    pr,
    ratio_is_generic,
)
from .indexcalc import (
    BuildingSpec,
    CurveSpec,
    adjunction_defect,
    building_index,
    closed_index,
    constrained_closed_index,
    cover_index_bound,
    cz_ellipsoid_cover,
    cz_minus_halfdim,
    cz_rotation,
    cz_torus_class,
    fredholm_index,
    kunneth_dimension,
    kunneth_threshold,
    multiple_cover_nonneg,
    partition_is_trivial,
    stabilization_shift,
    symplectization_index,
)
from .moduli import (
    ComponentDatum,
    Configuration,
    ContradictionReport,
    SearchBounds,
    classify_component,
    component_virtual_index,
    completion_area,
    contradiction_check,
    curve_area,
    enumerate_configurations,
    enumerate_configurations_bruteforce,
    leading_area,
    special_curve_area,
)
from .reeb import (
    EllipsoidAxis,
    TorusClass,
    ellipsoid_orbits,
    family_dimension,
    monodromy_angle,
    torus_m_vanishing,
    torus_orbit_action,
)

__version__ = "0.1.0"
