"""Context-sensitive spelling correction over Web-1T-style n-gram counts."""

__version__ = "0.1.0"

from webspell.kernels import BACKEND
from webspell.ngram_store import (
    CharBigramPostings,
    NGramEntry,
    NGramIndex,
    build_bigram_postings,
    build_from_corpus,
    ingest_count_files,
    load_index,
    parse_count_line,
    save_index,
)
from webspell.detector import Misspelling, Token, detect_nonword_errors, tokenize
from webspell.candidates import Candidate, char_bigrams, generate_candidates
from webspell.corrector import (
    Correction,
    CorrectorConfig,
    build_context_queries,
    correct_text,
    real_word_pass,
    select_correction,
)

__all__ = [
    "BACKEND",
    "Candidate",
    "CharBigramPostings",
    "Correction",
    "CorrectorConfig",
    "Misspelling",
    "NGramEntry",
    "NGramIndex",
    "Token",
    "build_bigram_postings",
    "build_context_queries",
    "build_from_corpus",
    "char_bigrams",
    "correct_text",
    "detect_nonword_errors",
    "generate_candidates",
    "ingest_count_files",
    "load_index",
    "parse_count_line",
    "real_word_pass",
    "save_index",
    "select_correction",
    "tokenize",
]
