"""Finite-window laboratory for Bohr, nil-Bohr, difference and gap-sum sets."""

from .checkers import (
    StarReport,
    bohr0_hits_differences,
    check_delta_star,
    check_shd_star_sampled,
    check_sumset_star,
    class_identity_delta3_fs2,
)
from .constructions import (
    AvoiderState,
    ChoicePolicy,
    CounterexampleSpec,
    PiecewiseWitness,
    avoider_run,
    avoider_step,
    counterexample_search,
    counterexample_verify,
    pw_witness,
)
from .dynamics import (
    BohrTarget,
    PolyTarget,
    SkewSystem,
    bohr_set,
    cf_convergent,
    parse_angle,
    poly_return_set,
    skew_orbit,
    torus_distance,
)
from .errors import (
    BoundExceeded,
    BudgetExceeded,
    EmptyFamily,
    NotFound,
    ParseError,
    PreconditionViolated,
    Stuck,
    VerificationFailed,
)
from .setcore import (
    GapSumSpec,
    IntervalFamily,
    WindowedSet,
    delta_set,
    max_gap,
    sh_d,
    sh_d_oracle,
    sumset,
    upper_density,
)
from .setio import parse_set_file, serialize_set_file

__version__ = "0.1.0"
