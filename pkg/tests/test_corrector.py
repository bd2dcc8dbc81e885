import random

import pytest

from webspell.candidates import generate_candidates
from webspell.corrector import (
    ContextQuery,
    CorrectorConfig,
    build_context_queries,
    correct_text,
    real_word_pass,
    restore_case,
    select_correction,
)
from webspell.detector import NON_WORD, REAL_WORD, tokenize
from webspell.ngram_store import build_bigram_postings, index_from_counts

SANGLE_CANDIDATES = ["tangle", "angle", "single", "tingle", "beagle", "sand", "sandbox",
                     "english", "sanitary", "sandwich"]


def make(counts):
    index = index_from_counts({tuple(k.split()): v for k, v in counts.items()})
    return index, build_bigram_postings(index)


def oracle_select(context, candidates, raw):
    """Exhaustive per-order scan over a plain dict of counts."""
    full = len(context) + 1
    for order in range(full, 1, -1):
        ctx = tuple(context[len(context) - (order - 1):])
        counts = [raw.get(ctx + (c,), 0) for c in candidates]
        if max(counts) > 0:
            j = counts.index(max(counts))
            return candidates[j], order, counts[j]
    counts = [raw.get((c,), 0) for c in candidates]
    j = counts.index(max(counts))
    return candidates[j], 1, counts[j]


# --- queries -------------------------------------------------------------------

def test_queries_full_window():
    toks = tokenize("case where only one sangle element")
    queries = build_context_queries(toks, 4, ["single", "tangle"])
    assert queries[0].tokens == ("case", "where", "only", "one", "single")
    assert queries[0].order == 5
    assert queries[1].candidate == "tangle"


def test_queries_sentence_start():
    toks = tokenize("Previous sentence ends. Sangle is wrong")
    queries = build_context_queries(toks, 4, ["single"])
    assert queries[0].tokens == ("single",)


def test_queries_second_word_and_punctuation_skipped():
    toks = tokenize("Alpha, sangle")
    queries = build_context_queries(toks, 2, ["single"])
    assert queries[0].tokens == ("alpha", "single")


def test_queries_window_limit():
    toks = tokenize("a b c d e f g")
    assert build_context_queries(toks, 6, ["x"], window=2)[0].tokens == ("e", "f", "x")
    assert build_context_queries(toks, 6, ["x"], window=0)[0].tokens == ("x",)


def test_context_query_bounds():
    with pytest.raises(ValueError):
        ContextQuery(())
    with pytest.raises(ValueError):
        ContextQuery(tuple("abcdef"))


# --- selection -----------------------------------------------------------------

def test_select_five_gram_winner():
    counts = {w: 1 for w in SANGLE_CANDIDATES + "case where only one".split()}
    counts["case where only one single"] = 40
    index, _ = make(counts)
    toks = tokenize("case where only one sangle element")
    corr = select_correction(build_context_queries(toks, 4, SANGLE_CANDIDATES),
                             SANGLE_CANDIDATES, index)
    assert (corr.chosen, corr.backoff_order, corr.winning_count, corr.applied) == ("single", 5, 40, True)


def test_select_unigram_fallback():
    index, _ = make({"tangle": 7, "single": 9, "case": 1, "where": 1, "only": 1, "one": 1})
    toks = tokenize("case where only one sangle")
    corr = select_correction(build_context_queries(toks, 4, ["tangle", "single"]),
                             ["tangle", "single"], index)
    assert (corr.chosen, corr.backoff_order, corr.winning_count) == ("single", 1, 9)


def test_select_backs_off_to_trigram():
    index, _ = make({"a": 1, "b": 1, "c": 1, "d": 1, "x": 5, "y": 5,
                     "c d y": 3, "c d x": 2, "b c d": 9})
    toks = tokenize("a b c d err")
    corr = select_correction(build_context_queries(toks, 4, ["x", "y"]), ["x", "y"], index)
    assert (corr.chosen, corr.backoff_order, corr.winning_count) == ("y", 3, 3)


def test_select_tie_goes_to_rank():
    index, _ = make({"p q": 4, "p r": 4, "q": 1, "r": 9, "p": 1})
    toks = tokenize("p err")
    corr = select_correction(build_context_queries(toks, 1, ["q", "r"]), ["q", "r"], index)
    assert corr.chosen == "q" and corr.backoff_order == 2


def test_select_single_candidate():
    index, _ = make({"zzz": 1})
    toks = tokenize("a b c d e")
    corr = select_correction(build_context_queries(toks, 4, ["nothing"]), ["nothing"], index)
    assert corr.chosen == "nothing" and corr.applied


def test_select_empty():
    index, _ = make({"a": 1})
    corr = select_correction([], [], index)
    assert not corr.applied and corr.chosen is None


def test_select_randomized_against_oracle():
    rng = random.Random(99)
    words = ["w%d" % i for i in range(12)]
    for _ in range(300):
        raw = {}
        for _ in range(rng.randint(0, 60)):
            n = rng.randint(1, 5)
            raw[tuple(rng.choice(words) for _ in range(n))] = rng.randint(1, 6)
        for w in words:
            raw.setdefault((w,), rng.randint(1, 6))
        index = index_from_counts(raw)
        context = [rng.choice(words) for _ in range(rng.randint(0, 4))]
        cands = rng.sample(words, rng.randint(1, 6))
        toks = tokenize(" ".join(context + ["qqqq"]))
        queries = build_context_queries(toks, len(context), cands)
        corr = select_correction(queries, cands, index)
        assert (corr.chosen, corr.backoff_order, corr.winning_count) == oracle_select(context, cands, raw)
        o = corr.backoff_order
        if o > 1:
            others = [index.lookup(q.tokens[-o:]) for q in queries]
            assert max(others) == corr.winning_count > 0
        for higher in range(o + 1, len(context) + 2):
            assert all(index.lookup(q.tokens[-higher:]) == 0 for q in queries)


# --- full pipeline ----------------------------------------------------------------

SOPPORT_COUNTS = {
    "would": 50, "like": 60, "to": 300, "ask": 20, "you": 200, "voice": 15, "your": 120,
    "for": 250, "this": 180, "bill": 12, "support": 30, "sport": 90, "report": 80,
    "spot": 70, "sopping": 1,
    "you to voice your support": 12, "to voice your sport": 1,
}


def test_sopport():
    index, postings = make(SOPPORT_COUNTS)
    text = "... would like to ask you to voice your sopport for this bill ..."
    result = correct_text(text, index, postings)
    assert result.text == text.replace("sopport", "support")
    (corr,) = result.corrections
    assert corr.error.kind == NON_WORD and corr.chosen == "support" and corr.backoff_order == 5
    # without context the most frequent neighbour wins instead
    isolated = correct_text(text, index, postings, CorrectorConfig(window=0))
    assert isolated.corrections[0].chosen != "support"


def test_clean_text_is_untouched():
    index, postings = make(SOPPORT_COUNTS)
    text = "  Would you support this bill?\n\tLike, voice your report!  "
    result = correct_text(text, index, postings)
    assert result.text == text and result.corrections == []


def test_corrected_context_feeds_later_errors():
    counts = {"we": 5, "mend": 2, "mind": 9, "our": 3, "ways": 1, "wars": 8,
              "we mend": 4, "we mend our ways": 2, "our wars": 1}
    index, postings = make(counts)
    result = correct_text("We mand our wazs.", index, postings)
    assert result.text == "We mend our ways."
    first, second = result.corrections
    assert first.backoff_order == 2 and second.backoff_order == 4


def test_case_restoration():
    assert restore_case("Sopport", "support") == "Support"
    assert restore_case("SOPPORT", "support") == "SUPPORT"
    assert restore_case("sopport", "support") == "support"
    assert restore_case("I", "a") == "A"
    index, postings = make(SOPPORT_COUNTS)
    text = "You to voice your SOPPORT"
    assert correct_text(text, index, postings).text == "You to voice your SUPPORT"
    plain = correct_text(text, index, postings, CorrectorConfig(case_restore=False))
    assert plain.text == "You to voice your support"


def test_uncorrectable_left_in_place():
    index, postings = make({"abc": 1})
    result = correct_text("abc zq", index, postings)
    assert result.text == "abc zq"
    (corr,) = result.corrections
    assert not corr.applied and corr.chosen is None


def test_deterministic():
    index, postings = make(SOPPORT_COUNTS)
    text = "voice yuor sopport for thsi bill"
    assert correct_text(text, index, postings) == correct_text(text, index, postings)


def test_config_validation():
    with pytest.raises(ValueError):
        CorrectorConfig(window=5)
    with pytest.raises(ValueError):
        CorrectorConfig(real_word_margin=1.0)
    with pytest.raises(ValueError):
        CorrectorConfig(k=0)


# --- real-word pass --------------------------------------------------------------

def flies_index(files_count, flies_count):
    counts = {w: 5 for w in "you should constantly backup your computer files flies".split()}
    counts["constantly backup your computer files"] = files_count
    counts["constantly backup your computer flies"] = flies_count
    return make(counts)


def test_real_word_flies():
    index, postings = flies_index(20, 1)
    cfg = CorrectorConfig(real_word_pass=True)
    result = correct_text("you should constantly backup your computer flies", index, postings, cfg)
    assert result.text.endswith("computer files")
    (corr,) = result.corrections
    assert corr.error.kind == REAL_WORD and corr.winning_count == 20


def test_real_word_pass_off_by_default():
    index, postings = flies_index(20, 1)
    text = "you should constantly backup your computer flies"
    assert correct_text(text, index, postings).text == text
    assert real_word_pass(tokenize(text), index, postings, CorrectorConfig()) == ([], [])


def test_real_word_no_flag_when_original_common():
    index, postings = flies_index(0, 500)
    toks = tokenize("you should constantly backup your computer flies")
    flagged, _ = real_word_pass(toks, index, postings, CorrectorConfig(real_word_pass=True))
    assert flagged == []


@pytest.mark.parametrize("c_best,fires", [(9, False), (10, True)])
def test_real_word_margin_boundary(c_best, fires):
    index, postings = flies_index(c_best, 0)
    toks = tokenize("you should constantly backup your computer flies")
    cfg = CorrectorConfig(real_word_pass=True, real_word_margin=10)
    flagged, corrections = real_word_pass(toks, index, postings, cfg)
    assert bool(flagged) == fires
    if fires:
        assert flagged[0].token_index == 6 and corrections[0].chosen == "files"


def test_real_word_vacuous_on_tiny_index():
    rng = random.Random(4)
    words = "ab ba abc bca cab aab".split()
    for _ in range(50):
        counts = {}
        for _ in range(30):
            n = rng.randint(1, 5)
            counts[" ".join(rng.choice(words) for _ in range(n))] = rng.randint(1, 3)
        for w in words:
            counts.setdefault(w, 1)
        index, postings = make(counts)
        text = " ".join(rng.choice(words) for _ in range(12))
        cfg = CorrectorConfig(real_word_pass=True, real_word_margin=100.0)
        assert correct_text(text, index, postings, cfg).corrections == []


def test_candidates_for_real_word_exclude_self():
    index, postings = flies_index(20, 1)
    assert "flies" not in [c.word for c in generate_candidates("flies", index, postings, exclude="flies")]
