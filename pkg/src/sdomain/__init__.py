"""Symbolic + numeric Laplace-domain analysis of linear time-invariant systems.

The symbolic side works on exponential-polynomial signals and delay-tagged
rational transforms; the numeric side provides an independent quadrature and
RK4 oracle that every symbolic result can be checked against.  On top of both
sits a coupled RC interconnect crosstalk model and a JSON batch CLI.
"""

from .algebra import (
    PoleTerm,
    Polynomial,
    RationalFunction,
    RootSet,
    partial_fractions,
    poly,
    poly_add,
    poly_eval,
    poly_mul,
    poly_roots,
    rational,
    rational_normalize,
)
from .crosstalk import (
    AggressorParams,
    VictimParams,
    aggressor_lists,
    aggressor_tf,
    total_tf,
    victim_lists,
    victim_noise_response,
    victim_tf,
)
from .kernels import BACKEND
from .laplace import (
    LaplaceExpr,
    freq_shift,
    inverse,
    laplace_delay,
    laplace_eval,
    modulate,
    nth_derivative_transform,
    time_scale,
    transform,
)
from .oracle import OdeGrid, QuadratureConfig, numeric_laplace, rk4_solve
from .signals import (
    GrowthBound,
    Mode,
    TimeExpr,
    cosine,
    exponential,
    growth_bound,
    sine,
    time_derivative,
    time_equal,
    time_eval,
    time_eval_grid,
    time_expr,
    time_integral,
    time_shift,
    unit_step,
)
from .systems import (
    SystemSpec,
    TransferFunction,
    cascade,
    forced_response,
    ode_to_tf,
    tf_to_ode,
)
from .uniqueness import (
    EquivalenceVerdict,
    LogSubstitutionResult,
    MomentReport,
    lerch_sample_check,
    log_substitution_check,
    moment_zero_test,
    transform_equal,
)

__version__ = "0.1.0"
