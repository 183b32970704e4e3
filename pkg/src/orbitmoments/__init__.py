"""orbitmoments: exact orbit counting and empirical prime averages."""

from .closed_forms import (
    ExactRational,
    cm_moment,
    dk,
    gl2_densities,
    gl2_moment,
    inert_partial_moment,
    mk,
    noncm_moment,
    p_poly,
    split_densities,
)
from .core_arith import (
    CapacityError,
    divisor_count,
    euler_phi,
    factorize,
    is_prime,
    kronecker_symbol,
    mobius,
    pow_mod,
    primes_in_range,
    sieve_primes,
)
from .local_counts import (
    CURVE_PRESETS,
    PowerEquation,
    SplittingType,
    WeierstrassCurve,
    count_roots_brute,
    count_roots_formula,
    ec_point_count,
    ec_torsion_count,
    parse_curve,
    splitting_type,
)
from .moment_lab import (
    CounterSpec,
    MomentReport,
    PowerCounter,
    PowerProductCounter,
    SplitFilter,
    TorsionCounter,
    characteristic_function,
    conditioned_moment,
    convergence_trace,
    empirical_distribution,
    empirical_moment,
)
from .orbit_engine import (
    PermutationAction,
    build_action,
    burnside_moment,
    fixed_point_histogram,
    orbit_count_oracle,
    predicted_value_distribution,
)
from .residue_algebra import (
    MatrixModN,
    QuadOrderSpec,
    QuadResidue,
    det_mod_n,
    enumerate_glm,
    glm_order,
    psi,
    quad_mul,
    quad_norm,
)

__version__ = "0.1.0"
