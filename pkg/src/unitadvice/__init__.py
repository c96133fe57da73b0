"""Online unit clustering with advice: offline optima, advice algorithms, lower-bound families."""

from .algorithms import A1, AD, AZ, GridBaseline, OracleError, REGISTRY, get_algorithm
from .geometry import (
    Clustering,
    Instance,
    fits_unit_cube,
    is_feasible,
    linf_distance,
    restrict_to_prefix,
)
from .lower_bounds import (
    FamilySpec,
    Prop1Report,
    gen_int_family,
    gen_real_family,
    min_advice_lower_bound,
    prefix_behavior_count,
    proposition1_check,
)
from .offline import InstanceTooLarge, enumerate_optimal, exact_min_clusters, greedy_1d
from .runtime import AdviceTape, TapeUnderrun, Transcript, run_online, solve

__version__ = "0.1.0"
