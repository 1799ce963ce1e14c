"""Two-tier ensemble schema matcher with a confirm-and-rescore review loop."""

from .ensemble import Suggestion, rank, rescore_with_confirmation, score_all
from .evaluation import (
    EvalReport,
    GroundTruth,
    ablation,
    evaluate,
    evaluate_f1,
    load_ground_truth,
    time_matchers,
    topn_accuracy,
)
from .ingest import discretize, from_columns, load_dataset, parse_dataset, tokenize
from .instance_matchers import (
    CorrelationProfile,
    StatsSummary,
    correlation_profile,
    mirror_correlation,
    mul_score,
    pearson,
    stats,
    uni_score,
)
from .model import (
    Attribute,
    Dataset,
    Kind,
    KnownPair,
    MatcherConfig,
    Origin,
    PairScore,
    ScoreMatrix,
    validate_config,
)
from .schema_matchers import (
    RuleSet,
    TfidfCorpus,
    build_tfidf,
    dk_score,
    edit_distance,
    lin_score,
    sim_lev,
    sim_monge_elkan,
    sim_tfidf,
)
from .session import MatchSession, load_session, new_session

__version__ = "0.1.0"
