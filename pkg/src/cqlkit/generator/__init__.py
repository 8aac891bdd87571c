from .dataset import class_counts, generate_dataset, record_dicts, write_jsonl
from .resources import (
    GAP,
    Collocation,
    SynonymLexicon,
    Word,
    extract_collocations_naive,
    load_collocations,
    load_synonyms,
    parse_collocation,
)
from .templates import (
    FORMS,
    Abandoned,
    GenConfig,
    GenRecord,
    build_form,
    condition_query,
    gen_condition,
    gen_simple,
    gen_within,
    insert_null_token,
    mutate_token,
    quantifier_choices,
    simple_seq,
)

__all__ = [
    "FORMS",
    "GAP",
    "Abandoned",
    "Collocation",
    "GenConfig",
    "GenRecord",
    "SynonymLexicon",
    "Word",
    "build_form",
    "class_counts",
    "condition_query",
    "extract_collocations_naive",
    "gen_condition",
    "gen_simple",
    "gen_within",
    "generate_dataset",
    "insert_null_token",
    "load_collocations",
    "load_synonyms",
    "mutate_token",
    "parse_collocation",
    "quantifier_choices",
    "record_dicts",
    "simple_seq",
    "write_jsonl",
]
