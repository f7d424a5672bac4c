"""q-deformed arithmetic, the nonextensive measure mu_q and the computable
content of the generalized Vitali construction."""

from .errors import (
    ConvergenceWarning,
    DomainError,
    LexError,
    ModeError,
    ParseError,
    PreconditionViolation,
    QError,
    SingularOperand,
)
from .qalgebra import (
    QParam,
    as_rational,
    deformed,
    deformed_inv,
    q_diff,
    q_div,
    q_exp,
    q_log,
    q_neg,
    q_prod,
    q_sum,
)
from .qcalculus import Quadrature, q_derivative, q_integrate
from .qmeasure import (
    Interval,
    IntervalSet,
    measure_interval,
    measure_set,
    parse_interval_set,
    scale_set,
    sigma_finite_partition,
    translate_set,
)
from .vitali import (
    BoundsRow,
    EquivWitness,
    divergence_scan,
    enumerate_rationals,
    equiv_witness,
    lemma1_checks,
    symmetry_witness,
    theorem_bounds,
    transitivity_witness,
)

__version__ = "0.1.0"
