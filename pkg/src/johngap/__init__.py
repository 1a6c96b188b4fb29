"""Convex bodies in John's position that defeat coarse polytope approximation.

The package builds a John-position simplex cut by lifted separated-subset
directions, extracts a machine-checkable certificate that any polytope
sandwiched as K ⊂ P ⊂ R·K needs at least m/(2R) facets, and verifies the
supporting combinatorics (hypergeometric tails, lift identities) and the
complementary net-based upper bound.
"""

from .backend import backend_name
from .body import (
    HardBodyInstance,
    HardBodyParams,
    build_instance,
    c0_lower_constant,
    c1_constant,
    derive_params,
    extract_certificate,
    instance_dumps,
    instance_to_json_dict,
    params_for_k,
    theorem_bound,
)
from .certificates import (
    Certificate,
    adversarial_facet_audit,
    certificate_from_json_dict,
    counting_check,
    counting_trials,
    facet_lower_bound,
    verify_hypotheses,
)
from .frames import (
    EquatorFrame,
    SimplexFrame,
    build_simplex,
    equator_frame,
    john_check,
    simplex_hrep,
)
from .lifts import (
    c0_constant,
    lift_down,
    lift_down_many,
    lift_up,
    lift_up_many,
    separation_implication,
)
from .nets import (
    SphericalNet,
    SupportOracle,
    approx_polytope,
    build_net,
    polytope_support_oracle,
    random_sandwich_body,
    sandwich_check,
)
from .polytope import (
    ConvexCoefficients,
    HPolytope,
    contains,
    enumerate_vertices,
    inclusion_check,
    polar_decompose,
    polar_vertices,
    radial_value,
    support_value,
    support_values,
)
from .subsets import (
    KSubset,
    direction_separation,
    exact_tail,
    find_separated_family,
    intersection_size,
    log_exact_tail,
    pair_dot_formula,
    sample_ksubset,
    subset_direction,
    subset_norm_constant,
    tail_bound_check,
)

__version__ = "0.1.0"
