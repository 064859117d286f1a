"""Conference participant recommendation from social ties and Big-Five personality."""

from .baselines import c1_score, c2_score
from .evaluation import (
    DatasetView,
    MetricsReport,
    MetricsRow,
    RelevanceCriteria,
    SplitSpec,
    accuracy,
    mae,
    nmae,
    run_experiment,
    split_pairs,
)
from .hybrid import Recommendation, merge_scores, recommend, run_pipeline
from .io import (
    SynthesisParams,
    export_report,
    generate_synthetic,
    load_contacts,
    load_personality,
    read_report,
)
from .model import (
    ConferenceConfig,
    ContactRecord,
    Dataset,
    PairScoreMatrix,
    PersonalityVector,
    pair_index,
    validate_dataset,
)
from .personality import pearson_personality, personality_matrix
from .ties import estimate_tie, raw_tie, tie_matrix

__version__ = "0.1.0"
