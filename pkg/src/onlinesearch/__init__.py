"""Online search with advice: players, oracles, adversaries and bound curves."""

from .adversary import (
    AdversaryTranscript,
    PigeonholeWitness,
    StaircaseFamily,
    adaptive_lower_bound,
    build_staircase,
    pigeonhole_check,
)
from .analysis import (
    BoundCurve,
    advice_bound,
    certify,
    crossover_bits,
    empirical_ratio_table,
    figure_data,
    randomized_bounds,
)
from .errors import *  # noqa: F401,F403
from .market import (
    CompetitiveReport,
    MarketBounds,
    PriceSequence,
    TradeOutcome,
    competitive_ratio,
    optimal_offline,
    validate_sequence,
)
from .oracle import oracle_optimal_day, oracle_threshold_index
from .strategies import (
    DecisionPolicy,
    ThresholdFamily,
    advice_player,
    expected_ratio_randomized,
    geometric_levels,
    make_rpp,
    make_stop_on_day,
    optimal_day_player,
    randomized_geometric_player,
    run_policy,
    threshold_family,
)
from .tape import AdviceTape, decode_day, encode_day_fixed, encode_day_self_delimiting

__version__ = "0.1.0"
