"""Exact rotation-number analysis of monotone degree-one circle-map lifts,
with emphasis on the values reachable by changing a map at its jumps."""
from .errors import BudgetError, CircleMapError, ValidationError
from .farey import check_pair, excluded_center, q_range, sset
from .lift import (
    GapSpec,
    Lift,
    Segment,
    compose,
    discontinuities,
    identity,
    interpolate,
    left_map,
    levy_within,
    levy_zero_equiv,
    make_lift,
    pointwise_leq,
    right_map,
    sandwich_homeos,
    translation,
)
from .rotation import (
    PeriodicOrbit,
    RotationResult,
    exact_rotation,
    orbit,
    periodic_orbit,
    rotation_number,
    tune_lambda,
)
from .family import assign, critical_grid, hypothesis_check, scan_family, verify_embedding, vset
from .examples import example

__version__ = "0.1.0"
