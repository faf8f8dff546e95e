"""streamsum: weakly supervised stream filtering and sequential summarization.

Given a timestamped text stream and a topical keyword rule, the package
splits the stream into chunks, separates relevant from irrelevant instances
with an online ensemble of Naive Bayes classifiers, distills per-chunk
representative sets through companion/distant-word selection, and emits
diversity-gated chunk-wise and sequential summaries. Classical extractive
rankers, evaluation metrics and a seeded synthetic drifting-stream generator
round out the toolkit.
"""

__version__ = "0.1.0"

from .baselines import (
    LexRankParams,
    QueryVariant,
    baseline_summary,
    centroid_rank,
    lexrank_rank,
    lexrank_scores,
    query_rank,
)
from .corpus import (
    Chunk,
    ChunkPolicy,
    Instance,
    chunk_stream,
    parse_instance,
    read_stream,
)
from .errors import (
    DegenerateBootstrap,
    DuplicateId,
    EmptyStream,
    InvalidCount,
    InvalidField,
    InvalidTimestamp,
    MalformedRecord,
    MissingField,
    ParseError,
    SchemeMismatch,
    SingleClassTraining,
    StreamsumError,
)
from .evalkit import (
    FilterMetrics,
    SummaryMetrics,
    SynthConfig,
    evaluate_summaries,
    filter_metrics,
    filter_metrics_from_labels,
    generate_synthetic_stream,
    summary_metrics,
)
from .filtering import (
    ChunkResult,
    EnsembleScorer,
    LabeledChunk,
    NBModel,
    RepresentativeSet,
    ScoredInstance,
    SelectionParams,
    WeakSupervisionRule,
    blend_confidence,
    bootstrap_label,
    build_representative,
    diversity_check,
    ensemble_confidence,
    nb_confidence,
    rule_label_chunk,
    run_filter,
    score_chunk,
    select_companion_words,
    select_distant_words,
    train_nb,
)
from .summarize import (
    ChunkSummary,
    DiversityGate,
    SequentialSummary,
    chunk_summary,
    diversity_admit,
    sequential_summary,
)
from .textkit import (
    ContentExtractor,
    IdfTable,
    RougeL,
    TermVector,
    build_idf,
    cosine_similarity,
    extract_content_words,
    lcs_length,
    load_stopwords,
    rouge_l,
    term_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
