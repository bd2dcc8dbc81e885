"""Comparator models: edit distances, the noisy channel and a bigram chain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from webspell import kernels
from webspell.ngram_store import SENTENCE_START, NGramIndex

levenshtein = kernels.levenshtein
damerau_levenshtein = kernels.osa_distance


def hamming(x: str, y: str) -> int:
    if len(x) != len(y):
        raise ValueError(f"hamming distance needs equal lengths ({len(x)} != {len(y)})")
    return sum(a != b for a, b in zip(x, y))


def lcs(x: str, y: str) -> tuple[int, str]:
    """Length of the longest common subsequence and one witness.

    The witness is traced back preferring a match, then moving up, then left.
    """
    return kernels.lcs(x, y)


@dataclass(frozen=True)
class PriorModel:
    """``total`` is the corpus token count; ``counts`` maps a word to its frequency."""

    total: int
    counts: Mapping[str, int] | Callable[[str], int]

    @classmethod
    def from_index(cls, index: NGramIndex) -> "PriorModel":
        return cls(index.total_unigram_tokens, index.unigram_count)

    def count(self, word: str) -> int:
        if callable(self.counts):
            return self.counts(word)
        return self.counts.get(word, 0)


@dataclass(frozen=True)
class ChannelParams:
    decay: float = 0.05

    def __post_init__(self):
        if not 0 < self.decay < 1:
            raise ValueError("decay must lie in (0, 1)")


def prior(model: PriorModel, word: str) -> float:
    if model.total <= 0:
        raise ValueError("prior needs a positive token total")
    c = model.count(word)
    if c < 0:
        raise ValueError("negative word count")
    return (c + 0.5) / (model.total + 0.5)


def likelihood(observed: str, word: str, params: ChannelParams = ChannelParams()) -> float:
    return params.decay ** damerau_levenshtein(observed, word)


def noisy_channel_rank(observed: str, candidates: Iterable[str], model: PriorModel,
                       params: ChannelParams = ChannelParams()) -> str:
    """Candidate maximising likelihood x prior; equal products go to the smaller word."""
    scored = [(-(likelihood(observed, w, params) * prior(model, w)), w) for w in candidates]
    if not scored:
        raise ValueError("noisy_channel_rank needs at least one candidate")
    return min(scored)[1]


def bigram_chain_prob(tokens: Sequence[str], index: NGramIndex,
                      start: str = SENTENCE_START) -> float:
    """Product of count(prev, w) / count(prev), starting from the sentence marker.

    Unseen history or bigram gives 0; no smoothing.
    """
    p = 1.0
    prev = start
    for w in tokens:
        denom = index.lookup([prev])
        if denom == 0:
            return 0.0
        num = index.lookup([prev, w])
        if num == 0:
            return 0.0
        p *= num / denom
        prev = w
    return p
