"""Tokenization with source spans, and non-word error detection."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Protocol

NON_WORD = "non-word"
REAL_WORD = "real-word"

_CHUNK_RE = re.compile(r"\S+")
_SENTENCE_END = frozenset(".!?")
_JOINERS = frozenset("'-\u2019")


class Vocabulary(Protocol):
    def contains_unigram(self, word: str) -> bool: ...


@dataclass(frozen=True)
class Token:
    """One token of the source text.

    ``start``/``end`` are character offsets into the source string, so
    ``text[start:end] == surface``.  ``sentence`` is the ordinal of the
    sentence the token belongs to.
    """

    surface: str
    normalized: str
    start: int
    end: int
    index: int
    is_word: bool
    sentence: int = 0

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end


@dataclass(frozen=True)
class Misspelling:
    token_index: int
    surface: str
    kind: str = NON_WORD


def _split_chunk(chunk: str) -> list[tuple[int, int]]:
    """Split a whitespace-free chunk into alternating word and punctuation spans.

    A single apostrophe or hyphen between two alphanumerics stays inside the
    word; any other punctuation run becomes its own span.
    """
    spans = []
    n = len(chunk)
    start = 0
    i = 0
    while i < n:
        if chunk[i].isalnum():
            i += 1
            continue
        j = i
        while j < n and not chunk[j].isalnum():
            j += 1
        if 0 < i and j < n and j - i == 1 and chunk[i] in _JOINERS:
            i = j
            continue
        if i > start:
            spans.append((start, i))
        spans.append((i, j))
        start = i = j
    if start < n:
        spans.append((start, n))
    return spans


def tokenize(text: str) -> list[Token]:
    """Split on whitespace, then peel punctuation runs off into their own tokens.

    A lone inner apostrophe or hyphen (``don't``, ``well-known``) stays
    inside the word; runs like the ``,--`` of ``word,--word`` split it.  A
    sentence ends after a punctuation run containing ``.``, ``!`` or ``?``
    that is followed by whitespace or the end of the text.
    """
    tokens: list[Token] = []
    sentence = 0
    for m in _CHUNK_RE.finditer(text):
        chunk, base = m.group(), m.start()
        pieces = _split_chunk(chunk)
        for a, b in pieces:
            surface = chunk[a:b]
            is_word = any(ch.isalpha() for ch in surface)
            tokens.append(Token(surface, surface.lower(), base + a, base + b,
                                len(tokens), is_word, sentence))
        a, b = pieces[-1]
        tail = chunk[a:b]
        if not tail[-1].isalnum() and _SENTENCE_END.intersection(tail):
            sentence += 1
    return tokens


def sentence_boundaries(tokens: Iterable[Token]) -> list[int]:
    """Token indexes at which a new sentence begins (always includes 0 if non-empty)."""
    starts = []
    last = None
    for tok in tokens:
        if tok.sentence != last:
            starts.append(tok.index)
            last = tok.sentence
    return starts


def detokenize(text: str, tokens: list[Token], replacements: dict[int, str]) -> str:
    """Rebuild ``text`` with the surfaces of some tokens replaced."""
    if not replacements:
        return text
    out = []
    pos = 0
    for i in sorted(replacements):
        tok = tokens[i]
        out.append(text[pos: tok.start])
        out.append(replacements[i])
        pos = tok.end
    out.append(text[pos:])
    return "".join(out)


def detect_nonword_errors(tokens: Iterable[Token], index: Vocabulary) -> list[Misspelling]:
    return [Misspelling(t.index, t.surface, NON_WORD)
            for t in tokens if t.is_word and not index.contains_unigram(t.normalized)]
