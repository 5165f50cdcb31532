"""cantorkit: exact, search-backed moduli of continuity, suprema and bar
bounds for functionals on Cantor space, with exact real analysis on [0, 1].

Every higher-type object here is realized by a depth-bounded exhaustive (or
query-structure-guided) search whose result is certified by stabilization
under depth doubling, and every certified value is cross-checkable against a
brute-force oracle at desk scale.
"""

from .budget import DEFAULT_STEP_BUDGET, DEFAULT_WORK_BUDGET, work_budget
from .core_seq import (
    BinWord, CantorPoint, enumerate_words, even_track, interleave, odd_track,
    pad, prefix,
)
from .dyadic import Dyadic, ExactReal, PointReal, parse_fraction
from .errors import (
    CantorKitError, DomainError, DslError, DslNameError, DslSyntaxError,
    PartialityError, StepBudgetError, UncertifiedError, ValueOverflowError,
    WorkBudgetError,
)
from .fan import (
    FanResult, bar_fan_modulus, bar_modulus, modulus_at_depth, refuting_path,
    uniform_modulus,
)
from .functional_eval import (
    EvalTrace, Functional2, SeqFunctional, eval_seq, eval_traced, mu_functional,
)
from .kernel import BACKEND
from .pointwise import (
    Associate, build_associate, eval_associate, modulus_code_check,
    pointwise_modulus, query_bound,
)
from .realfn import (
    DEFAULT_CAPS, OpenCover, RealCaps, RealFunction, digit_functional,
    finite_bound, finite_subcover, integrate, positive_lower_bound,
    riemann_sum, supremum_on_unit, uc_certificate, uc_modulus,
)
from .suptheorems import (
    BarBound, FancResult, SupResult, WordSet, least_bound_with_witness,
    neighborhood_bar_bound, predicate_bar_bound, supremum, tree_bar_bound,
)
from .ubound import (
    CANTOR_DOMAIN, BoundedDomain, bounded_argmax, least_witness_bound,
    seq_modulus,
)

__version__ = "0.1.0"
