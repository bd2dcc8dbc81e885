"""Context-sensitive correction.

Each candidate is appended to the (up to four) words preceding the error and
the resulting n-gram is counted.  The highest count wins; when every
candidate scores zero the leftmost context word is dropped and the lookup is
repeated, down to bigrams, and finally the plain unigram count decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from webspell.candidates import DEFAULT_K, Candidate, generate_candidates
from webspell.detector import NON_WORD, REAL_WORD, Misspelling, Token, detokenize, tokenize
from webspell.ngram_store import MAX_ORDER, CharBigramPostings, NGramIndex


@dataclass(frozen=True)
class ContextQuery:
    tokens: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.tokens) <= MAX_ORDER:
            raise ValueError("context query must hold 1..5 tokens")

    @property
    def order(self) -> int:
        return len(self.tokens)

    @property
    def candidate(self) -> str:
        return self.tokens[-1]


@dataclass(frozen=True)
class Correction:
    error: Misspelling
    chosen: str | None
    backoff_order: int
    winning_count: int
    applied: bool
    candidates: tuple[str, ...] = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class CorrectorConfig:
    k: int = DEFAULT_K
    window: int = 4
    real_word_pass: bool = False
    real_word_margin: float = 10.0
    case_restore: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 <= self.window <= MAX_ORDER - 1:
            raise ValueError("window must be in 0..4")
        if not self.real_word_margin > 1:
            raise ValueError("real-word margin must be > 1")


class CorrectionResult(NamedTuple):
    text: str
    corrections: list[Correction]


def _word(c) -> str:
    return c.word if isinstance(c, Candidate) else c


def preceding_words(tokens: Sequence[Token], error_index: int, window: int,
                    replacements: dict[int, str] | None = None) -> list[str]:
    """Up to ``window`` word tokens before ``error_index`` in the same sentence."""
    replacements = replacements or {}
    sentence = tokens[error_index].sentence
    out: list[str] = []
    i = error_index - 1
    while i >= 0 and len(out) < window and tokens[i].sentence == sentence:
        tok = tokens[i]
        if tok.is_word:
            out.append(replacements.get(i, tok.normalized))
        i -= 1
    out.reverse()
    return out


def build_context_queries(tokens: Sequence[Token], error_index: int, candidates,
                          window: int = 4, replacements: dict[int, str] | None = None
                          ) -> list[ContextQuery]:
    """One query per candidate: preceding context words followed by the candidate.

    ``replacements`` maps token indexes to already-applied corrections, which
    then stand in for the original words as context.
    """
    context = tuple(preceding_words(tokens, error_index, window, replacements))
    return [ContextQuery(context + (_word(c),)) for c in candidates]


def select_correction(queries: Sequence[ContextQuery], candidates, index: NGramIndex,
                      error: Misspelling | None = None) -> Correction:
    if len(queries) != len(candidates):
        raise ValueError("queries and candidates must be parallel")
    words = tuple(_word(c) for c in candidates)
    if not words:
        return Correction(error, None, 1, 0, False)

    top = max(q.order for q in queries)
    for order in range(top, 1, -1):
        counts = [index.lookup(q.tokens[-order:]) if q.order >= order else 0 for q in queries]
        best = max(counts)
        if best > 0:
            j = counts.index(best)  # first maximum = best candidate rank
            return Correction(error, words[j], order, best, True, words)

    counts = [index.unigram_count(w) for w in words]
    j = counts.index(max(counts))
    return Correction(error, words[j], 1, counts[j], True, words)


def restore_case(surface: str, word: str) -> str:
    if len(surface) > 1 and surface.isupper():
        return word.upper()
    if surface[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


def _check_real_word(tokens, i, index, postings, config, replacements):
    """Real-word test for token ``i``; returns a Correction or None."""
    context = preceding_words(tokens, i, config.window, replacements)
    if len(context) < config.window:
        return None
    word = tokens[i].normalized
    cands = generate_candidates(word, index, postings, config.k, exclude=word)
    if not cands:
        return None
    c_orig = index.lookup(context + [word])
    counts = [index.lookup(context + [c.word]) for c in cands]
    c_best = max(counts)
    if c_best < config.real_word_margin * (c_orig + 1):
        return None
    j = counts.index(c_best)
    error = Misspelling(i, tokens[i].surface, REAL_WORD)
    return Correction(error, cands[j].word, len(context) + 1, c_best, True,
                      tuple(c.word for c in cands))


def real_word_pass(tokens: Sequence[Token], index: NGramIndex, postings: CharBigramPostings,
                   config: CorrectorConfig, replacements: dict[int, str] | None = None
                   ) -> tuple[list[Misspelling], list[Correction]]:
    """Flag in-vocabulary words whose context strongly prefers a near neighbour.

    A word with a full context window is replaced when its best candidate's
    n-gram count reaches ``margin * (own count + 1)``.  Applied replacements
    are written into ``replacements`` (when given) and feed later contexts.
    """
    if not config.real_word_pass:
        return [], []
    replacements = {} if replacements is None else replacements
    flagged, corrections = [], []
    for tok in tokens:
        if not tok.is_word or not index.contains_unigram(tok.normalized):
            continue
        corr = _check_real_word(tokens, tok.index, index, postings, config, replacements)
        if corr is not None:
            flagged.append(corr.error)
            corrections.append(corr)
            replacements[tok.index] = corr.chosen
    return flagged, corrections


def correct_tokens(tokens: Sequence[Token], index: NGramIndex, postings: CharBigramPostings,
                   config: CorrectorConfig = CorrectorConfig()
                   ) -> tuple[list[Correction], dict[int, str]]:
    """Left-to-right correction; earlier fixes become context for later errors."""
    replacements: dict[int, str] = {}
    corrections: list[Correction] = []
    for tok in tokens:
        if not tok.is_word:
            continue
        if not index.contains_unigram(tok.normalized):
            error = Misspelling(tok.index, tok.surface, NON_WORD)
            cands = generate_candidates(tok.normalized, index, postings, config.k)
            queries = build_context_queries(tokens, tok.index, cands, config.window, replacements)
            corr = select_correction(queries, cands, index, error)
        elif config.real_word_pass:
            corr = _check_real_word(tokens, tok.index, index, postings, config, replacements)
            if corr is None:
                continue
        else:
            continue
        corrections.append(corr)
        if corr.applied:
            replacements[tok.index] = corr.chosen
    return corrections, replacements


def correct_text(text: str, index: NGramIndex, postings: CharBigramPostings,
                 config: CorrectorConfig = CorrectorConfig()) -> CorrectionResult:
    tokens = tokenize(text)
    corrections, replacements = correct_tokens(tokens, index, postings, config)
    if config.case_restore:
        surfaces = {i: restore_case(tokens[i].surface, w) for i, w in replacements.items()}
    else:
        surfaces = dict(replacements)
    return CorrectionResult(detokenize(text, tokens, surfaces), corrections)
