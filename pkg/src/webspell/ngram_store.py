"""Exact n-gram counts (orders 1..5) in Web 1T layout.

An :class:`NGramIndex` keeps one table per order.  Tokens are mapped to dense
ids by their rank in the sorted vocabulary, so sorting id rows sorts the
underlying token sequences too; every table is a ``(rows, order)`` uint32
matrix in strictly increasing lexicographic order plus a parallel count
vector.  Lookups binary-search that matrix.
"""

from __future__ import annotations

import os
import re
import struct
import zlib
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from webspell import kernels

MAX_ORDER = 5
ORDERS = tuple(range(1, MAX_ORDER + 1))
SENTENCE_START = "<s>"

FORMAT_MAGIC = b"W1TIDX\x00\x00"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<8sHHIQQ")  # magic, version, orders, vocab size, vocab bytes, file length
_DIR_ENTRY = struct.Struct("<QQQ")  # rows, keys offset, counts offset
_TRAILER = struct.Struct("<I")

_COUNT_RE = re.compile(r"[0-9]+")
_DISPLAY_RE = re.compile(r"^(?P<tokens>.*?\S)\s*\((?P<count>[^()]*)\)$")


class CountParseError(ValueError):
    """A count line (or file) that is not in Web 1T format."""

    def __init__(self, message: str, line: str, path: str | None = None,
                 lineno: int | None = None):
        where = f"{path}:{lineno}: " if path is not None else ""
        super().__init__(f"{where}{message}: {line!r}")
        self.reason = message
        self.line = line
        self.path = path
        self.lineno = lineno


class EmptyCorpusError(ValueError):
    pass


class CorruptIndexError(ValueError):
    pass


class IndexVersionError(CorruptIndexError):
    pass


def normalize(token: str) -> str:
    return token.lower()


@dataclass(frozen=True)
class NGramEntry:
    tokens: tuple[str, ...]
    count: int

    def __post_init__(self):
        if not 1 <= len(self.tokens) <= MAX_ORDER:
            raise ValueError(f"n-gram must have 1..{MAX_ORDER} tokens, got {len(self.tokens)}")
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"invalid token {tok!r}")
        if self.count < 0:
            raise ValueError("count must be non-negative")

    @property
    def order(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class VocabularyEntry:
    word: str
    id: int
    count: int


def parse_count_line(line: str, tolerant: bool = False) -> NGramEntry:
    """Parse ``"tok1 tok2<TAB>count"``.

    With ``tolerant=True`` the display form ``"tok1 tok2 (count)"`` is also
    accepted.  Tokens are lowercased.
    """
    text = line.rstrip("\r\n")
    if not text.strip():
        raise CountParseError("empty line", line)
    if "\t" in text:
        token_part, _, count_part = text.partition("\t")
        if "\t" in count_part:
            raise CountParseError("more than one TAB", line)
    elif tolerant and (m := _DISPLAY_RE.match(text.strip())):
        token_part, count_part = m.group("tokens"), m.group("count")
    else:
        raise CountParseError("missing count", line)

    count_part = count_part.strip()
    if not _COUNT_RE.fullmatch(count_part):
        raise CountParseError("count is not a non-negative integer", line)
    if tolerant:
        token_part = token_part.strip()
        tokens = token_part.split()
    else:
        tokens = token_part.split(" ")
    if not tokens or any(not t for t in tokens):
        raise CountParseError("empty token", line)
    if len(tokens) > MAX_ORDER:
        raise CountParseError(f"more than {MAX_ORDER} tokens", line)
    try:
        return NGramEntry(tuple(normalize(t) for t in tokens), int(count_part))
    except ValueError as exc:
        raise CountParseError(str(exc), line) from None


class NGramIndex:
    """Immutable per-order sorted count tables.

    Build one with :func:`ingest_count_files`, :func:`build_from_corpus` or
    :func:`index_from_counts`; do not mutate the arrays afterwards.
    """

    def __init__(self, vocab: Sequence[str], tables: Mapping[int, tuple[np.ndarray, np.ndarray]]):
        self.vocab: list[str] = list(vocab)
        self._ids = {w: i for i, w in enumerate(self.vocab)}
        if len(self._ids) != len(self.vocab):
            raise ValueError("vocabulary contains duplicates")
        self._tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for n in ORDERS:
            keys, counts = tables.get(n, (None, None))
            if keys is None:
                keys = np.zeros((0, n), dtype=np.uint32)
                counts = np.zeros(0, dtype=np.int64)
            keys = np.asarray(keys)
            if keys.dtype != np.uint32:
                keys = keys.astype(np.uint32)
            if keys.ndim != 2 or keys.shape[1] != n or counts.shape != (keys.shape[0],):
                raise ValueError(f"malformed order-{n} table")
            self._tables[n] = (keys, counts)

        uni_keys, uni_counts = self._tables[1]
        self.unigram_counts = np.zeros(len(self.vocab), dtype=np.int64)
        self.unigram_counts[uni_keys[:, 0]] = uni_counts
        self.word_lengths = np.fromiter((len(w) for w in self.vocab), dtype=np.int64,
                                        count=len(self.vocab))
        self.total_unigram_tokens = int(uni_counts.sum())

    # --- queries -------------------------------------------------------

    def token_id(self, word: str) -> int | None:
        return self._ids.get(normalize(word))

    def lookup(self, tokens: Sequence[str]) -> int:
        n = len(tokens)
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"lookup needs 1..{MAX_ORDER} tokens, got {n}")
        ids = []
        for tok in tokens:
            i = self._ids.get(normalize(tok))
            if i is None:
                return 0
            ids.append(i)
        keys, counts = self._tables[n]
        if not len(counts):
            return 0
        pos = kernels.search_row(keys, ids)
        return int(counts[pos]) if pos >= 0 else 0

    def contains_unigram(self, word: str) -> bool:
        if not word:
            return False
        i = self._ids.get(normalize(word))
        return i is not None and self.unigram_counts[i] > 0

    def unigram_count(self, word: str) -> int:
        i = self._ids.get(normalize(word))
        return 0 if i is None else int(self.unigram_counts[i])

    def order_size(self, n: int) -> int:
        return self._tables[n][1].shape[0]

    def table(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        return self._tables[n]

    def entries(self, n: int) -> Iterator[NGramEntry]:
        """Entries of order ``n`` in strictly increasing key order."""
        keys, counts = self._tables[n]
        vocab = self.vocab
        for row, c in zip(keys.tolist(), counts.tolist()):
            yield NGramEntry(tuple(vocab[i] for i in row), c)

    def vocabulary(self) -> list[VocabularyEntry]:
        counts = self.unigram_counts.tolist()
        return [VocabularyEntry(w, i, counts[i]) for i, w in enumerate(self.vocab)]

    def unigram_words(self) -> list[str]:
        return [self.vocab[i] for i in np.flatnonzero(self.unigram_counts > 0)]

    def __repr__(self):
        sizes = ", ".join(f"{n}:{self.order_size(n)}" for n in ORDERS)
        return f"<NGramIndex vocab={len(self.vocab)} orders {{{sizes}}}>"


def lookup(index: NGramIndex, tokens: Sequence[str]) -> int:
    return index.lookup(tokens)


def contains_unigram(index: NGramIndex, word: str) -> bool:
    return index.contains_unigram(word)


# --- building -------------------------------------------------------------

def _sorted_rows(keys: np.ndarray) -> np.ndarray:
    if keys.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.lexsort(keys.T[::-1])


def index_from_counts(counts: Mapping[tuple[str, ...], int]) -> NGramIndex:
    """Index from an ``{tokens: count}`` mapping; zero counts are dropped."""
    by_order: dict[int, list[tuple[tuple[str, ...], int]]] = defaultdict(list)
    words: set[str] = set()
    for tokens, c in counts.items():
        if c <= 0:
            continue
        entry = NGramEntry(tuple(normalize(t) for t in tokens), int(c))
        by_order[entry.order].append((entry.tokens, entry.count))
        words.update(entry.tokens)
    # normalization can fold two keys together
    merged: dict[int, Counter] = {}
    for n, items in by_order.items():
        acc: Counter = Counter()
        for tokens, c in items:
            acc[tokens] += c
        merged[n] = acc

    vocab = sorted(words)
    ids = {w: i for i, w in enumerate(vocab)}
    tables = {}
    for n, acc in merged.items():
        keys = np.array([[ids[t] for t in tokens] for tokens in acc], dtype=np.uint32).reshape(-1, n)
        vals = np.fromiter(acc.values(), dtype=np.int64, count=len(acc))
        order = _sorted_rows(keys)
        tables[n] = (np.ascontiguousarray(keys[order]), vals[order])
    return NGramIndex(vocab, tables)


def iter_count_file(path: str | os.PathLike, tolerant: bool = False) -> Iterator[NGramEntry]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield parse_count_line(line, tolerant=tolerant)
            except CountParseError as exc:
                raise CountParseError(exc.reason, line.rstrip("\r\n"), os.fspath(path),
                                      lineno) from None


def ingest_count_files(paths: Iterable[str | os.PathLike], tolerant: bool = False) -> NGramIndex:
    """Merge Web-1T count files into one index; duplicate keys are summed."""
    acc: Counter = Counter()
    for path in paths:
        for entry in iter_count_file(path, tolerant=tolerant):
            acc[entry.tokens] += entry.count
    return index_from_counts(acc)


def corpus_sentences(corpus: str, sentence_marker: str | None = SENTENCE_START) -> list[list[str]]:
    """Normalized word sequences, one list per sentence, optionally marker-prefixed."""
    from webspell.detector import tokenize

    sentences: list[list[str]] = []
    current: list[str] = []
    last_sentence = None
    for tok in tokenize(corpus):
        if tok.sentence != last_sentence:
            if current:
                sentences.append(current)
            current = []
            last_sentence = tok.sentence
        if tok.is_word:
            current.append(tok.normalized)
    if current:
        sentences.append(current)
    sentences = [s for s in sentences if s]
    if sentence_marker is not None:
        sentences = [[sentence_marker] + s for s in sentences]
    return sentences


def build_from_corpus(corpus: str, max_order: int = MAX_ORDER, min_count: int = 1,
                      sentence_marker: str | None = SENTENCE_START) -> NGramIndex:
    """Count every within-sentence window of 1..max_order word tokens.

    Each sentence is prefixed with ``sentence_marker`` (pass ``None`` to
    disable), which is then stored like any other token.
    """
    if not 1 <= max_order <= MAX_ORDER:
        raise ValueError(f"max_order must be in 1..{MAX_ORDER}")
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    sentences = corpus_sentences(corpus, sentence_marker)
    if not sentences:
        raise EmptyCorpusError("corpus contains no word tokens")

    vocab = sorted({w for s in sentences for w in s})
    ids = {w: i for i, w in enumerate(vocab)}
    seq = np.fromiter((ids[w] for s in sentences for w in s), dtype=np.uint32)
    sid = np.repeat(np.arange(len(sentences), dtype=np.int64),
                    [len(s) for s in sentences])

    tables = {}
    for n in range(1, max_order + 1):
        if seq.shape[0] < n:
            break
        span = seq.shape[0] - n + 1
        same = sid[: span] == sid[n - 1:]
        if not same.any():
            continue
        windows = np.stack([seq[i: i + span] for i in range(n)], axis=1)[same]
        keys, counts = np.unique(windows, axis=0, return_counts=True)
        keep = counts >= min_count
        tables[n] = (np.ascontiguousarray(keys[keep], dtype=np.uint32),
                     counts[keep].astype(np.int64))
    return _compact(vocab, tables)


def _compact(vocab: list[str], tables: dict[int, tuple[np.ndarray, np.ndarray]]) -> NGramIndex:
    """Drop vocabulary ids no table references; remapping is monotone so order survives."""
    used = np.zeros(len(vocab), dtype=bool)
    for keys, _ in tables.values():
        used[keys.ravel()] = True
    if used.all():
        return NGramIndex(vocab, tables)
    remap = np.cumsum(used) - 1
    new_vocab = [w for w, u in zip(vocab, used) if u]
    new_tables = {n: (remap[keys].astype(np.uint32), counts) for n, (keys, counts) in tables.items()}
    return NGramIndex(new_vocab, new_tables)


# --- character bigram postings -----------------------------------------------

def char_bigrams(word: str) -> list[str]:
    """Distinct adjacent character pairs of ``word`` in first-occurrence order."""
    seen = dict.fromkeys(word[i: i + 2] for i in range(len(word) - 1))
    return list(seen)


class CharBigramPostings:
    """Inverted index from 2-character sequences to vocabulary ids.

    Only words present in the unigram table are posted; each posting list is
    a sorted int64 array of ids.
    """

    _EMPTY = np.zeros(0, dtype=np.int64)

    def __init__(self, postings: Mapping[str, np.ndarray]):
        self.postings = dict(postings)

    def get(self, bigram: str) -> np.ndarray:
        return self.postings.get(bigram, self._EMPTY)

    def __getitem__(self, bigram: str) -> np.ndarray:
        return self.get(bigram)

    def __contains__(self, bigram: str) -> bool:
        return bigram in self.postings

    def __len__(self):
        return len(self.postings)

    def bigrams(self) -> list[str]:
        return sorted(self.postings)


def build_bigram_postings(index: NGramIndex) -> CharBigramPostings:
    lists: dict[str, list[int]] = defaultdict(list)
    for i in np.flatnonzero(index.unigram_counts > 0).tolist():
        for bg in char_bigrams(index.vocab[i]):
            lists[bg].append(i)
    return CharBigramPostings({bg: np.array(ids, dtype=np.int64) for bg, ids in lists.items()})


# --- persistence --------------------------------------------------------------

def _align(n: int) -> int:
    return (n + 7) & ~7


def save_index(index: NGramIndex, location: str | os.PathLike) -> None:
    """Write the versioned little-endian artifact (atomic rename)."""
    vocab_blob = bytearray()
    for w in index.vocab:
        raw = w.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ValueError(f"token too long to store: {w[:40]!r}...")
        vocab_blob += struct.pack("<H", len(raw)) + raw

    offset = _HEADER.size + _DIR_ENTRY.size * MAX_ORDER
    vocab_at = offset
    offset = _align(offset + len(vocab_blob))
    directory = []
    blocks = []
    for n in ORDERS:
        keys, counts = index.table(n)
        kbytes = np.ascontiguousarray(keys, dtype="<u4").tobytes()
        cbytes = np.ascontiguousarray(counts, dtype="<u8").tobytes()
        keys_at = offset
        offset = _align(offset + len(kbytes))
        counts_at = offset
        offset = _align(offset + len(cbytes))
        directory.append((counts.shape[0], keys_at, counts_at))
        blocks.append((keys_at, kbytes))
        blocks.append((counts_at, cbytes))
    file_len = offset + _TRAILER.size

    buf = bytearray(offset)
    _HEADER.pack_into(buf, 0, FORMAT_MAGIC, FORMAT_VERSION, MAX_ORDER, len(index.vocab),
                      len(vocab_blob), file_len)
    for n, entry in enumerate(directory):
        _DIR_ENTRY.pack_into(buf, _HEADER.size + n * _DIR_ENTRY.size, *entry)
    buf[vocab_at: vocab_at + len(vocab_blob)] = vocab_blob
    for at, blob in blocks:
        buf[at: at + len(blob)] = blob
    buf += _TRAILER.pack(zlib.crc32(buf))

    tmp = f"{os.fspath(location)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(buf)
    os.replace(tmp, location)


def load_index(location: str | os.PathLike) -> NGramIndex:
    with open(location, "rb") as fh:
        data = fh.read()
    if len(data) < _HEADER.size + _TRAILER.size:
        raise CorruptIndexError("index artifact is truncated")
    magic, version, orders, vocab_size, vocab_len, file_len = _HEADER.unpack_from(data, 0)
    if magic != FORMAT_MAGIC:
        raise CorruptIndexError("not an index artifact (bad magic)")
    if version != FORMAT_VERSION:
        raise IndexVersionError(f"index format version {version}, expected {FORMAT_VERSION}")
    if orders != MAX_ORDER:
        raise CorruptIndexError(f"unexpected order count {orders}")
    if file_len != len(data):
        raise CorruptIndexError(f"index artifact length {len(data)} != recorded {file_len}")
    (crc,) = _TRAILER.unpack_from(data, len(data) - _TRAILER.size)
    body = memoryview(data)[: len(data) - _TRAILER.size]
    if zlib.crc32(body) != crc:
        raise CorruptIndexError("index artifact checksum mismatch")

    pos = _HEADER.size + _DIR_ENTRY.size * MAX_ORDER
    vocab = []
    end = pos + vocab_len
    for _ in range(vocab_size):
        (k,) = struct.unpack_from("<H", data, pos)
        vocab.append(data[pos + 2: pos + 2 + k].decode("utf-8"))
        pos += 2 + k
    if pos != end:
        raise CorruptIndexError("vocabulary block size mismatch")

    tables = {}
    for n in ORDERS:
        rows, keys_at, counts_at = _DIR_ENTRY.unpack_from(data, _HEADER.size + (n - 1) * _DIR_ENTRY.size)
        keys = np.frombuffer(data, dtype="<u4", count=rows * n, offset=keys_at).reshape(rows, n)
        counts = np.frombuffer(data, dtype="<u8", count=rows, offset=counts_at).astype(np.int64)
        tables[n] = (keys.astype(np.uint32, copy=False), counts)
    return NGramIndex(vocab, tables)
