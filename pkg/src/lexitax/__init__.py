"""lexitax: build semantic taxonomies from conventional machine-readable
dictionaries by mapping senses to semantic primitives, training salient
words, relabelling, filtering genus terms and assembling per-class forests.
"""

from .distance import DistanceResult, WeightedPath, conceptual_distance, shortest_weighted_path
from .errors import ConfigError, DataFormatError, InvariantError, LexitaxError
from .firstpass import (
    CoverageReport,
    label_sense_by_distance,
    run_first_pass,
    translate_to_concepts,
)
from .labels import LabelledSense, parse_gold, parse_labels, write_labels
from .lexicon import (
    BilingualMap,
    Dictionary,
    Sense,
    derive_genus,
    dictionary_counts,
    extract_genus,
    parse_bilingual,
    parse_sense_file,
    parse_wordlist,
    tokenize,
    write_bilingual,
    write_sense_file,
)
from .pipeline import PipelineConfig, evaluate_labels, load_config, run_pipeline
from .salience import (
    SalienceTable,
    association_ratio,
    parse_salience,
    relevance,
    top_salient,
    train_salience,
    write_salience,
)
from .secondpass import (
    ClassScoreVector,
    iterate_labelling,
    run_second_pass,
    score_definition,
)
from .selection import (
    FilterConfig,
    GenusFrequencyTable,
    GenusSelection,
    apply_filters,
    genus_frequency_table,
    sweep_report,
)
from .semnet import Concept, SemanticNet, compute_depths, parse_semantic_net, write_semantic_net
from .taxonomy import (
    Taxonomy,
    TaxonomyNode,
    TaxonomyStats,
    apply_attachments,
    build_taxonomy,
    collect_pairs,
    disambiguate_genus,
    export_taxonomy,
    taxonomy_stats,
)

__version__ = "0.1.0"
