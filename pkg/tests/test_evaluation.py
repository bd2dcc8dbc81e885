import csv
import io
import itertools
import json
import random

import jsonschema
import pytest

from webspell.baselines import damerau_levenshtein
from webspell.corrector import Correction
from webspell.detector import NON_WORD, REAL_WORD, Misspelling, tokenize
from webspell.evaluation import (
    OPS,
    REPORT_SCHEMA,
    ClassTally,
    EvalReport,
    InducedError,
    TextTooShortError,
    apply_edit,
    emit_report,
    evaluate,
    induce_errors,
    load_report,
    percent,
)

DENSE_VOCAB = {"".join(p) for p in itertools.product("abcd", repeat=3)}


def dense_text(n_words, seed=0):
    rng = random.Random(seed)
    vocab = sorted(DENSE_VOCAB)
    return " ".join(rng.choice(vocab) for _ in range(n_words))


# --- edits ----------------------------------------------------------------------------

def test_sangle_substitution():
    assert apply_edit("single", "substitution", 1, "a") == "sangle"


def test_files_flies_transposition_is_real_word():
    assert apply_edit("files", "transposition", 1) == "flies"
    text = "backup your computer files"
    vocab = {"backup", "your", "computer", "files", "flies"}
    _, errors = induce_errors(text, vocab, rate=0.25, realword_share=1.0, seed=0)
    assert len(errors) == 1 and errors[0].kind == REAL_WORD


@pytest.mark.parametrize("op,pos,char,out", [
    ("insertion", 0, "x", "xab"), ("insertion", 2, "x", "abx"), ("deletion", 1, None, "a"),
    ("substitution", 0, "z", "zb"), ("transposition", 0, None, "ba"),
])
def test_apply_edit(op, pos, char, out):
    assert apply_edit("ab", op, pos, char) == out


@pytest.mark.parametrize("op,pos", [("deletion", 2), ("transposition", 1), ("swap", 0),
                                    ("insertion", 3)])
def test_apply_edit_rejects(op, pos):
    with pytest.raises(ValueError):
        apply_edit("ab", op, pos, "x")


# --- induction -------------------------------------------------------------------------

def test_table2_split():
    text = dense_text(200_000)
    perturbed, errors = induce_errors(text, DENSE_VOCAB, rate=0.01, realword_share=0.20, seed=3)
    assert len(errors) == 2000
    assert sum(e.kind == NON_WORD for e in errors) == 1600
    assert sum(e.kind == REAL_WORD for e in errors) == 400
    assert len({e.token_index for e in errors}) == 2000


def test_induction_properties():
    text = dense_text(3000, seed=1)
    perturbed, errors = induce_errors(text, DENSE_VOCAB, seed=9)
    clean = tokenize(text)
    dirty = tokenize(perturbed)
    assert len(clean) == len(dirty)
    by_index = {e.token_index: e for e in errors}
    for c, d in zip(clean, dirty):
        if c.index in by_index:
            e = by_index[c.index]
            assert (e.original, e.corrupted) == (c.surface, d.surface)
            assert e.corrupted != e.original and e.op in OPS
            assert damerau_levenshtein(e.original, e.corrupted) == 1
            assert e.kind == (REAL_WORD if e.corrupted in DENSE_VOCAB else NON_WORD)
        else:
            assert c.surface == d.surface


def test_seed_determinism():
    text = dense_text(5000, seed=2)
    assert induce_errors(text, DENSE_VOCAB, seed=42) == induce_errors(text, DENSE_VOCAB, seed=42)
    assert induce_errors(text, DENSE_VOCAB, seed=42) != induce_errors(text, DENSE_VOCAB, seed=43)


def test_case_of_corrupted_form_follows_original():
    text = " ".join(["Single"] * 100)
    perturbed, errors = induce_errors(text, {"single"}, rate=0.01, realword_share=0.0, seed=1)
    (e,) = errors
    assert e.original == "Single"
    assert e.corrupted[0].isupper() and e.corrupted[1:].islower()


def test_text_too_short():
    with pytest.raises(TextTooShortError):
        induce_errors("just a few words", DENSE_VOCAB)
    with pytest.raises(TextTooShortError):
        induce_errors(" ".join(["x"] * 200), {"x"})  # no eligible word


def test_real_word_shortfall_becomes_non_word():
    text = " ".join(["zebra"] * 300)
    _, errors = induce_errors(text, {"zebra"}, rate=0.01, realword_share=0.5, seed=0)
    assert len(errors) == 3 and all(e.kind == NON_WORD for e in errors)


def test_rate_validation():
    with pytest.raises(ValueError):
        induce_errors("a b", DENSE_VOCAB, rate=0)
    with pytest.raises(ValueError):
        induce_errors("a b", DENSE_VOCAB, realword_share=1.5)


# --- scoring ---------------------------------------------------------------------------

def test_percent_rounding():
    assert percent(1581, 1600) == 99
    assert percent(279, 400) == 70
    assert percent(1, 8) == 13  # 12.5 rounds up
    assert percent(0, 0) == 0


def test_table5_fixture(scored_run):
    gold, corrections, tokens = scored_run(1600, 1581, 400, 279, words=200_000)
    report = evaluate(gold, corrections, tokens)
    assert report.total_words == 200_000 and report.total_errors == 2000
    assert (report.nonword.corrected, report.realword.corrected, report.overall.corrected) == (1581, 279, 1860)
    assert (report.nonword.not_or_falsely_corrected, report.realword.not_or_falsely_corrected,
            report.overall.not_or_falsely_corrected) == (19, 121, 140)
    table = emit_report(report, "text-table")
    rates = [line for line in table.splitlines() if line.startswith("Corrected %")][0].split()[2:]
    assert rates == ["93%", "99%", "70%"]
    misses = [line for line in table.splitlines() if line.startswith("Not/Falsely %")][0].split()[2:]
    assert misses == ["7%", "1%", "30%"]


@pytest.mark.parametrize("nw_hit,rw_hit,expected", [
    (988, 32, ["51%", "62%", "8%"]),
    (1118, 116, ["62%", "70%", "29%"]),
])
def test_comparator_tables_format(scored_run, nw_hit, rw_hit, expected):
    report = evaluate(*scored_run(1600, nw_hit, 400, rw_hit))
    table = emit_report(report, "table")
    row = [line for line in table.splitlines() if line.startswith("Corrected %")][0]
    assert row.split()[2:] == expected


def test_all_correct(scored_run):
    report = evaluate(*scored_run(8, 8, 2, 2))
    assert report.nonword.rate == report.realword.rate == report.overall.rate == 1.0


def test_unapplied_counts_against():
    tokens = tokenize("the wrod here")
    gold = [_gold(1)]
    unapplied = Correction(Misspelling(1, "wrod"), None, 1, 0, False)
    report = evaluate(gold, [unapplied], tokens)
    assert (report.nonword.corrected, report.nonword.not_or_falsely_corrected) == (0, 1)
    assert report.details[0].outcome == "unapplied"
    assert evaluate(gold, [], tokens).details[0].outcome == "missed"


def _gold(i, kind=NON_WORD):
    return InducedError(i, "word", "wrod", "transposition", kind, 1)


def test_case_insensitive_match():
    tokens = tokenize("The Wrod")
    c = Correction(Misspelling(1, "Wrod"), "Word", 2, 3, True)
    assert evaluate([_gold(1)], [c], tokens).nonword.corrected == 1


def test_index_mismatch_is_rejected():
    tokens = tokenize("the wrod here")
    with pytest.raises(ValueError):
        evaluate([_gold(0)], [], tokens)
    with pytest.raises(ValueError):
        evaluate([_gold(7)], [], tokens)


def test_conservation_random():
    rng = random.Random(12)
    for _ in range(200):
        text = dense_text(rng.randint(100, 600), seed=rng.randrange(10**6))
        perturbed, errors = induce_errors(text, DENSE_VOCAB, rate=0.05,
                                          realword_share=rng.random(), seed=rng.randrange(10**6))
        tokens = tokenize(perturbed)
        corrections = [Correction(Misspelling(e.token_index, e.corrupted, e.kind),
                                  rng.choice([e.original, "zzz"]), 1, 0, rng.random() < 0.8)
                       for e in errors if rng.random() < 0.7]
        r = evaluate(errors, corrections, tokens)
        for tally in (r.nonword, r.realword, r.overall):
            assert tally.corrected + tally.not_or_falsely_corrected == tally.total
        assert r.total_errors == len(errors)
        assert r.nonword.total == sum(e.kind == NON_WORD for e in errors)


def test_tally_validation():
    with pytest.raises(ValueError):
        ClassTally(3, 4)


# --- serialization ---------------------------------------------------------------------

def test_empty_report_renders_zero():
    report = EvalReport(0, ClassTally(0, 0), ClassTally(0, 0))
    table = emit_report(report, "text-table")
    row = [line for line in table.splitlines() if line.startswith("Corrected %")][0]
    assert row.split()[2:] == ["0%", "0%", "0%"]
    jsonschema.validate(json.loads(emit_report(report)), REPORT_SCHEMA)


def test_json_roundtrip_and_schema(scored_run):
    report = evaluate(*scored_run(16, 9, 4, 1), meta={"seed": 5})
    text = emit_report(report, "json")
    data = json.loads(text)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert data["overall"]["rate"] == pytest.approx(0.5)
    back = load_report(text)
    assert back == report and back.meta == {"seed": 5}
    assert emit_report(back, "json") == text


def test_csv_one_row_per_error(scored_run):
    report = evaluate(*scored_run(3, 1, 2, 2))
    rows = list(csv.DictReader(io.StringIO(emit_report(report, "csv"))))
    assert len(rows) == 5
    assert [r["outcome"] for r in rows] == ["corrected", "wrong", "wrong", "corrected", "corrected"]
    assert rows[1]["chosen"] == "ward"


def test_text_table_meta_header(scored_run):
    report = evaluate(*scored_run(1, 1, 0, 0), meta={"seed": 7})
    assert emit_report(report, "text-table").startswith("# seed: 7\n")


def test_unknown_format(scored_run):
    with pytest.raises(ValueError):
        emit_report(evaluate(*scored_run(1, 1, 0, 0)), "xml")
