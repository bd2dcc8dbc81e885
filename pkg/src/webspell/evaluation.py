"""Error-induction protocol and scoring.

Clean text gets a fixed fraction of its words corrupted by one
insertion, deletion, substitution or transposition each.  A corruption that
lands on another dictionary word is a real-word error, otherwise a non-word
error.  A corrector's output is scored per class as corrected versus
not/falsely corrected.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from webspell.corrector import Correction, restore_case
from webspell.detector import NON_WORD, REAL_WORD, Token, detokenize, tokenize

OPS = ("insertion", "deletion", "substitution", "transposition")
MAX_ATTEMPTS = 100

OUTCOMES = ("corrected", "missed", "unapplied", "wrong")

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["total_words", "total_errors", "nonword", "realword", "overall"],
    "properties": {
        "total_words": {"type": "integer", "minimum": 0},
        "total_errors": {"type": "integer", "minimum": 0},
        "nonword": {"$ref": "#/definitions/tally"},
        "realword": {"$ref": "#/definitions/tally"},
        "overall": {"$ref": "#/definitions/tally"},
        "meta": {"type": "object"},
        "errors": {"type": "array", "items": {"type": "object"}},
    },
    "definitions": {
        "tally": {
            "type": "object",
            "required": ["total", "corrected", "not_or_falsely_corrected", "rate"],
            "properties": {
                "total": {"type": "integer", "minimum": 0},
                "corrected": {"type": "integer", "minimum": 0},
                "not_or_falsely_corrected": {"type": "integer", "minimum": 0},
                "rate": {"type": "number", "minimum": 0, "maximum": 1},
            },
        }
    },
}


class TextTooShortError(ValueError):
    pass


@dataclass(frozen=True)
class InducedError:
    token_index: int
    original: str
    corrupted: str
    op: str
    kind: str
    position: int = 0


@dataclass(frozen=True)
class ErrorOutcome:
    token_index: int
    original: str
    corrupted: str
    op: str
    kind: str
    chosen: str | None
    outcome: str


@dataclass(frozen=True)
class ClassTally:
    total: int
    corrected: int

    def __post_init__(self):
        if not 0 <= self.corrected <= self.total:
            raise ValueError("corrected must lie in 0..total")

    @property
    def not_or_falsely_corrected(self) -> int:
        return self.total - self.corrected

    @property
    def rate(self) -> float:
        return self.corrected / self.total if self.total else 0.0

    def as_dict(self) -> dict:
        return {"total": self.total, "corrected": self.corrected,
                "not_or_falsely_corrected": self.not_or_falsely_corrected, "rate": self.rate}


@dataclass(frozen=True)
class EvalReport:
    total_words: int
    nonword: ClassTally
    realword: ClassTally
    details: tuple[ErrorOutcome, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def total_errors(self) -> int:
        return self.nonword.total + self.realword.total

    @property
    def overall(self) -> ClassTally:
        return ClassTally(self.total_errors, self.nonword.corrected + self.realword.corrected)


def percent(numerator: int, denominator: int) -> int:
    """Whole percent, rounded half up; 0 when the denominator is 0."""
    if denominator <= 0:
        return 0
    return (200 * numerator + denominator) // (2 * denominator)


# --- induction ---------------------------------------------------------------

def apply_edit(word: str, op: str, position: int, char: str | None = None) -> str:
    """Apply one edit at ``position``.

    Insertion puts ``char`` before ``word[position]`` (position may equal
    ``len(word)``); transposition swaps ``position`` and ``position + 1``.
    """
    n = len(word)
    if op == "insertion":
        if not 0 <= position <= n or not char:
            raise ValueError("bad insertion")
        return word[:position] + char + word[position:]
    if op == "deletion":
        if not 0 <= position < n:
            raise ValueError("bad deletion")
        return word[:position] + word[position + 1:]
    if op == "substitution":
        if not 0 <= position < n or not char:
            raise ValueError("bad substitution")
        return word[:position] + char + word[position + 1:]
    if op == "transposition":
        if not 0 <= position < n - 1:
            raise ValueError("bad transposition")
        return word[:position] + word[position + 1] + word[position] + word[position + 2:]
    raise ValueError(f"unknown edit operation {op!r}")


def _membership(vocabulary):
    if hasattr(vocabulary, "contains_unigram"):
        return vocabulary.contains_unigram
    return vocabulary.__contains__


def _random_edit(rng: random.Random, word: str, alphabet: Sequence[str]) -> tuple[str, str, int]:
    op = rng.choice(OPS)
    n = len(word)
    if op == "insertion":
        pos = rng.randrange(n + 1)
        return op, apply_edit(word, op, pos, rng.choice(alphabet)), pos
    if op == "deletion":
        pos = rng.randrange(n)
        return op, apply_edit(word, op, pos), pos
    if op == "substitution":
        pos = rng.randrange(n)
        return op, apply_edit(word, op, pos, rng.choice(alphabet)), pos
    pos = rng.randrange(n - 1)
    return op, apply_edit(word, op, pos), pos


def _eligible(tok: Token, known) -> bool:
    w = tok.normalized
    return tok.is_word and len(w) >= 2 and w.isalpha() and known(w)


def induce_errors(text: str, vocabulary, rate: float = 0.01, realword_share: float = 0.20,
                  seed: int = 0) -> tuple[str, list[InducedError]]:
    """Corrupt ``round(rate * words)`` distinct dictionary words of ``text``.

    ``vocabulary`` is an index (anything with ``contains_unigram``) or a set
    of lowercase words; only purely alphabetic in-vocabulary words of two or
    more letters are targeted.  Real-word errors come from rejection
    sampling (up to 100 edits per target before moving on to another word).
    Returns the perturbed text and the errors sorted by token index.
    """
    if not 0 < rate <= 1:
        raise ValueError("rate must lie in (0, 1]")
    if not 0 <= realword_share <= 1:
        raise ValueError("realword_share must lie in [0, 1]")
    known = _membership(vocabulary)
    tokens = tokenize(text)
    word_count = sum(t.is_word for t in tokens)
    total = round(rate * word_count)
    if total < 1:
        raise TextTooShortError(f"{word_count} words at rate {rate} yield no errors")
    want_real = round(total * realword_share)
    want_non = total - want_real

    eligible = [t.index for t in tokens if _eligible(t, known)]
    alphabet = sorted({ch for i in eligible for ch in tokens[i].normalized})
    rng = random.Random(seed)
    rng.shuffle(eligible)

    def attempt(word: str, real: bool):
        for _ in range(MAX_ATTEMPTS):
            op, bad, pos = _random_edit(rng, word, alphabet)
            if bad != word and bool(known(bad)) == real:
                return op, bad, pos
        return None

    chosen: dict[int, tuple[str, str, int, str]] = {}
    leftovers = []
    for i in eligible:
        if len(chosen) == total:
            break
        word = tokens[i].normalized
        got = None
        if want_real:
            got = attempt(word, True)
            if got:
                want_real -= 1
                chosen[i] = (*got, REAL_WORD)
                continue
        if want_non:
            got = attempt(word, False)
            if got:
                want_non -= 1
                chosen[i] = (*got, NON_WORD)
                continue
        leftovers.append(i)
    # real-word quota the vocabulary could not satisfy falls back to non-word errors
    if len(chosen) < total:
        seen = set(leftovers)
        untouched = leftovers + [i for i in eligible if i not in chosen and i not in seen]
        for i in untouched:
            if len(chosen) == total:
                break
            got = attempt(tokens[i].normalized, False)
            if got:
                chosen[i] = (*got, NON_WORD)
    if len(chosen) < total:
        raise TextTooShortError(
            f"only {len(chosen)} of {total} errors could be placed in {word_count} words")

    errors = []
    surfaces = {}
    for i in sorted(chosen):
        op, bad, pos, kind = chosen[i]
        surface = restore_case(tokens[i].surface, bad)
        surfaces[i] = surface
        errors.append(InducedError(i, tokens[i].surface, surface, op, kind, pos))
    return detokenize(text, tokens, surfaces), errors


# --- scoring -----------------------------------------------------------------

def evaluate(gold: Sequence[InducedError], corrections: Iterable[Correction],
             tokens: Sequence[Token], meta: dict | None = None) -> EvalReport:
    """Score corrections against induced errors (comparison is case-insensitive)."""
    by_index = {}
    for c in corrections:
        by_index[c.error.token_index] = c
    tallies = {NON_WORD: [0, 0], REAL_WORD: [0, 0]}
    details = []
    for g in gold:
        if not 0 <= g.token_index < len(tokens):
            raise ValueError(f"induced error at token {g.token_index} is outside the text")
        if tokens[g.token_index].normalized != g.corrupted.lower():
            raise ValueError(f"token {g.token_index} is {tokens[g.token_index].surface!r}, "
                             f"expected {g.corrupted!r}")
        if g.kind not in tallies:
            raise ValueError(f"unknown error kind {g.kind!r}")
        c = by_index.get(g.token_index)
        if c is None:
            outcome, chosen = "missed", None
        elif not c.applied:
            outcome, chosen = "unapplied", None
        elif c.chosen.lower() == g.original.lower():
            outcome, chosen = "corrected", c.chosen
        else:
            outcome, chosen = "wrong", c.chosen
        tallies[g.kind][0] += 1
        tallies[g.kind][1] += outcome == "corrected"
        details.append(ErrorOutcome(g.token_index, g.original, g.corrupted, g.op, g.kind,
                                    chosen, outcome))
    return EvalReport(
        total_words=sum(t.is_word for t in tokens),
        nonword=ClassTally(*tallies[NON_WORD]),
        realword=ClassTally(*tallies[REAL_WORD]),
        details=tuple(details),
        meta=dict(meta or {}),
    )


# --- serialization -----------------------------------------------------------

def report_to_dict(report: EvalReport) -> dict:
    out = {
        "total_words": report.total_words,
        "total_errors": report.total_errors,
        "nonword": report.nonword.as_dict(),
        "realword": report.realword.as_dict(),
        "overall": report.overall.as_dict(),
        "meta": dict(report.meta),
        "errors": [asdict(d) for d in report.details],
    }
    return out


def report_from_dict(data: dict) -> EvalReport:
    nonword = ClassTally(data["nonword"]["total"], data["nonword"]["corrected"])
    realword = ClassTally(data["realword"]["total"], data["realword"]["corrected"])
    details = tuple(ErrorOutcome(**d) for d in data.get("errors", ()))
    return EvalReport(data["total_words"], nonword, realword, details, dict(data.get("meta", {})))


def load_report(text: str) -> EvalReport:
    return report_from_dict(json.loads(text))


_CSV_FIELDS = ("token_index", "original", "corrupted", "op", "kind", "chosen", "outcome")


def _csv(report: EvalReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for d in report.details:
        row = asdict(d)
        row["chosen"] = "" if row["chosen"] is None else row["chosen"]
        writer.writerow(row)
    return buf.getvalue()


def _text_table(report: EvalReport) -> str:
    bands = (("Total Errors", report.overall), ("Non-Word Errors", report.nonword),
             ("Real-Word Errors", report.realword))
    label_w = 24
    col_w = 18

    def row(label, cells):
        return label.ljust(label_w) + "".join(str(c).rjust(col_w) for c in cells)

    lines = []
    for key, value in report.meta.items():
        lines.append(f"# {key}: {value}")
    lines.append(f"Total words: {report.total_words:,}")
    lines.append(row("", [name for name, _ in bands]))
    lines.append(row("Errors", [f"{t.total:,}" for _, t in bands]))
    lines.append(row("Corrected", [f"{t.corrected:,}" for _, t in bands]))
    lines.append(row("Not/Falsely Corrected", [f"{t.not_or_falsely_corrected:,}" for _, t in bands]))
    lines.append(row("Corrected %", [f"{percent(t.corrected, t.total)}%" for _, t in bands]))
    lines.append(row("Not/Falsely %",
                     [f"{percent(t.not_or_falsely_corrected, t.total)}%" for _, t in bands]))
    return "\n".join(lines) + "\n"


def emit_report(report: EvalReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv(report)
    if fmt in ("text", "text-table", "table"):
        return _text_table(report)
    raise ValueError(f"unknown report format {fmt!r}")
