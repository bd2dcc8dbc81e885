from pathlib import Path

import pytest

from webspell.ngram_store import build_bigram_postings, index_from_counts

DATA = Path(__file__).parent / "data"
ROOT = Path(__file__).parent.parent


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def fixture_counts_path():
    return DATA / "ngrams_fixture.tsv"


@pytest.fixture(scope="session")
def sample_words():
    return DATA.joinpath("sample_vocabulary.txt").read_text().split()


@pytest.fixture(scope="session")
def sample_index(sample_words):
    return index_from_counts({(w,): 1 for w in sample_words})


@pytest.fixture(scope="session")
def sample_postings(sample_index):
    return build_bigram_postings(sample_index)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for report in terminalreporter.stats.get("passed", []) + terminalreporter.stats.get("failed", []):
        if report.when != "call":
            continue
        for key, value in report.user_properties:
            if key == "criterion":
                lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def scored_run():
    """Factory for a synthetic scored run with given per-class totals and hits.

    Builds a text of ``words`` tokens whose every 50th word is corrupted,
    gold errors for those slots, and corrections that restore the first
    ``hits`` of each class.
    """
    from webspell.corrector import Correction
    from webspell.detector import NON_WORD, REAL_WORD, Misspelling, tokenize
    from webspell.evaluation import InducedError

    def build(nonword, nonword_hits, realword, realword_hits, words=None):
        n_err = nonword + realword
        words = words or max(50 * n_err, 1)
        slots = [50 * i for i in range(n_err)]
        surface = ["word"] * words
        for s in slots:
            surface[s] = "wrod"
        tokens = tokenize(" ".join(surface))
        gold, corrections = [], []
        for j, s in enumerate(slots):
            kind = NON_WORD if j < nonword else REAL_WORD
            hit = j < nonword_hits if kind == NON_WORD else j - nonword < realword_hits
            gold.append(InducedError(s, "word", "wrod", "transposition", kind, 1))
            corrections.append(Correction(Misspelling(s, "wrod", kind),
                                          "word" if hit else "ward", 2, 1, True))
        return gold, corrections, tokens

    return build
