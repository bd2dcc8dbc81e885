"""Candidate spellings from shared character bigrams.

A vocabulary word's *overlap* with an error is the number of distinct
bigrams of the error that occur somewhere in the word.  Candidates are
ordered by overlap (high first), then absolute length difference, then
unigram count (high first), then the word itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from webspell import kernels
from webspell.ngram_store import CharBigramPostings, NGramIndex, char_bigrams, normalize

DEFAULT_K = 10

__all__ = ["Candidate", "char_bigrams", "generate_candidates", "rank_key", "DEFAULT_K"]


@dataclass(frozen=True)
class Candidate:
    word: str
    overlap: int
    len_diff: int
    unigram_count: int
    rank: int


def rank_key(word: str, overlap: int, error_length: int, count: int) -> tuple:
    """Sort key for candidate ordering; smaller sorts first."""
    return (-overlap, abs(len(word) - error_length), -count, word)


def generate_candidates(error: str, index: NGramIndex, postings: CharBigramPostings,
                        k: int = DEFAULT_K, exclude: str | None = None) -> list[Candidate]:
    """Top-``k`` vocabulary words sharing at least one bigram with ``error``.

    Errors shorter than two characters have no bigrams; for those the
    candidates are vocabulary words one Levenshtein edit away, by unigram
    count (their ``overlap`` is reported as 0).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    error = normalize(error)
    skip = index.token_id(exclude) if exclude is not None else None
    grams = char_bigrams(error)
    if not grams:
        return _short_error_candidates(error, index, k, skip)

    hits = [postings.get(bg) for bg in grams]
    hits = [h for h in hits if h.size]
    if not hits:
        return []
    ids, overlap = np.unique(np.concatenate(hits), return_counts=True)
    if skip is not None:
        keep = ids != skip
        ids, overlap = ids[keep], overlap[keep]
    if not ids.size:
        return []
    len_diff = np.abs(index.word_lengths[ids] - len(error))
    counts = index.unigram_counts[ids]
    # ids are ranks in the sorted vocabulary, so id order is word order
    order = np.lexsort((ids, -counts, len_diff, -overlap))[:k]
    return [Candidate(index.vocab[ids[j]], int(overlap[j]), int(len_diff[j]), int(counts[j]), r)
            for r, j in enumerate(order.tolist())]


def _short_error_candidates(error: str, index: NGramIndex, k: int, skip) -> list[Candidate]:
    found = []
    for i in np.flatnonzero((index.unigram_counts > 0) & (index.word_lengths <= len(error) + 1)).tolist():
        word = index.vocab[i]
        if i != skip and word != error and kernels.levenshtein(error, word) == 1:
            found.append((-int(index.unigram_counts[i]), word))
    found.sort()
    return [Candidate(word, 0, abs(len(word) - len(error)), -neg, r)
            for r, (neg, word) in enumerate(found[:k])]
