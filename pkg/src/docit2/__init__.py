"""Card-based co-construction of interval type-2 fuzzy linguistic scales.

The toolkit covers the whole path from a decision maker placing blank cards
between labels to ranked alternatives: exact piecewise-linear fuzzy numbers,
deck-of-cards value elicitation with ratio review and adjustment, bisection
dialogues for cores and supports, hesitation-driven type-2 envelopes, two
admissible total orders, weighted aggregation, and an event-sourced session
protocol with an HTTP service and CLI on top.
"""

from .cards import (
    CardChain,
    CardGap,
    RatioTable,
    ValueScale,
    adjust_values,
    approximate_with_cards,
    cards_from_values,
    enumerate_chains,
    label_values,
    normalize,
    unnormalized_values,
    weights_from_cards,
)
from .coresupport import BoundaryDialogue, CoreSupport
from .errors import (
    Docit2Error,
    DocumentError,
    EnumerationCapError,
    InconsistencyError,
    InternalError,
    LevelSetError,
    MigrationError,
    NestingError,
    PrecisionError,
    ProtocolError,
    RatioConsistencyError,
    ValidationError,
    WeightError,
)
from .fuzzy import (
    Interval,
    PiecewiseMF,
    add,
    alpha_cut,
    evaluate,
    knots,
    scale,
    structurally_equal,
    weighted_average,
)
from .it2 import (
    IT2MF,
    ORDERS,
    envelope_it2,
    it2_add,
    it2_alpha_cut,
    it2_order_1,
    it2_order_2,
    it2_scale,
    it2_weighted_average,
    t1_order,
)
from .mcdm import (
    Criterion,
    DecisionProblem,
    LinguisticScale,
    Ranking,
    rank,
    ranking_csv,
    score_alternative,
)
from .ratios import SubjectiveRatios, memberships_from_ratios
from .session import (
    Event,
    SessionConfig,
    SessionState,
    initial_state,
    linguistic_scale,
    pending_probe,
    replay_events,
    session_transition,
)
from .session_io import SessionDocument, load, replay, save
from .sides import SideFragment, assemble_t1, build_t1_side, default_breakpoints

__version__ = "0.1.0"

__all__ = [
    "BoundaryDialogue",
    "CardChain",
    "CardGap",
    "CoreSupport",
    "Criterion",
    "DecisionProblem",
    "Docit2Error",
    "DocumentError",
    "EnumerationCapError",
    "Event",
    "IT2MF",
    "InconsistencyError",
    "InternalError",
    "Interval",
    "LevelSetError",
    "LinguisticScale",
    "MigrationError",
    "NestingError",
    "ORDERS",
    "PiecewiseMF",
    "PrecisionError",
    "ProtocolError",
    "Ranking",
    "RatioConsistencyError",
    "RatioTable",
    "SessionConfig",
    "SessionDocument",
    "SessionState",
    "SideFragment",
    "SubjectiveRatios",
    "ValidationError",
    "ValueScale",
    "WeightError",
    "add",
    "adjust_values",
    "alpha_cut",
    "approximate_with_cards",
    "assemble_t1",
    "build_t1_side",
    "cards_from_values",
    "default_breakpoints",
    "enumerate_chains",
    "envelope_it2",
    "evaluate",
    "initial_state",
    "it2_add",
    "it2_alpha_cut",
    "it2_order_1",
    "it2_order_2",
    "it2_scale",
    "it2_weighted_average",
    "knots",
    "label_values",
    "linguistic_scale",
    "load",
    "memberships_from_ratios",
    "normalize",
    "pending_probe",
    "rank",
    "ranking_csv",
    "replay",
    "replay_events",
    "save",
    "scale",
    "score_alternative",
    "session_transition",
    "structurally_equal",
    "t1_order",
    "unnormalized_values",
    "weighted_average",
    "weights_from_cards",
]
