"""Ramsey arrowing of book graphs and bicliques in random graphs: exact and
certificate-based deciders, quasirandomness and regularity checkers, and
Monte Carlo threshold experiments."""

__version__ = "0.1.0"

from .errors import (
    BookRamseyError,
    InputError,
    InternalError,
    LimitsError,
    ParseError,
)
from .graph import (
    Graph,
    common_neighborhood,
    complete_graph,
    enumerate_cliques,
    from_edge_list,
    induced_subgraph,
    maxcut_exact,
    triangle_count,
)
from .sampler import Seed, sample_gnp, sample_uniform_coloring
from .witness import (
    BookWitness,
    ColoringCounts,
    TwoColoring,
    color_subgraph,
    find_mono_biclique,
    find_mono_book,
    goodman_counts,
    max_book_size,
)
from .arrowing import (
    ArrowingVerdict,
    DeciderLimits,
    TargetSpec,
    decide_exact,
    decide_sandwich,
    decide_star_fast,
    search_avoiding_coloring,
)
from .certificates import (
    AuditReport,
    ChernoffReport,
    CountingCertificate,
    ThresholdParams,
    UpperParams,
    counting_certificate_b2,
    lower_threshold_report,
    quasirandom_audit,
    sharp_threshold,
    upper_params,
)
from .regularity import (
    ExtensionProfile,
    Partition,
    ReducedGraph,
    RegPairReport,
    build_reduced_graph,
    case_split,
    conlon_inequality_lhs,
    counting_lemma_check,
    extension_bound_check,
    p_density,
    test_regularity,
)
from .experiments import (
    BisectResult,
    ExperimentConfig,
    SweepResult,
    SweepRow,
    bisect_threshold,
    estimate_arrow_probability,
    sweep,
    wilson_interval,
)
