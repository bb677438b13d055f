from .indexset import EMPTY, IndexSet, from_orders, natural
from .families import ExponentMatrix, FaceLattice, IndexFamily, pullback_family, pushforward_family
from .surgery import (
    BETA2_L,
    BETA2_R,
    DOUBLE,
    DOUBLE_B,
    ET,
    HEAT,
    PI_C,
    PI_F,
    PI_S,
    SINGLE,
    TRIPLE,
    compose_families,
    composition_oracle,
    mapping_oracle,
    mapping_theorem,
)
from .heat import (
    euclidean_b_spectrum,
    heat_alpha,
    heat_alpha_even,
    heat_trace_expected,
    heat_trace_family,
    heat_trace_tff_contribution,
    index_set_H,
    index_sets_J,
    resolvent_constraints_J,
    resolvent_constraints_K,
    validate_calculus_membership,
)
