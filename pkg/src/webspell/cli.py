"""Command-line entry point: ``webspell {build,check,correct,eval,lookup}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from webspell import __version__
from webspell.corrector import CorrectorConfig, correct_text, correct_tokens
from webspell.detector import detect_nonword_errors, tokenize
from webspell.evaluation import emit_report, evaluate, induce_errors
from webspell.ngram_store import (
    MAX_ORDER,
    ORDERS,
    build_bigram_postings,
    build_from_corpus,
    ingest_count_files,
    load_index,
    save_index,
)

log = logging.getLogger("webspell")

REPORT_FORMATS = ("json", "csv", "text", "text-table")
ORDER_NAMES = {1: "unigrams", 2: "bigrams", 3: "trigrams", 4: "4-grams", 5: "5-grams"}


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    index_path: str | None = None
    k: int = 10
    window: int = 4
    real_word: bool = False
    gamma: float = 10.0
    rate: float = 0.01
    realword_share: float = 0.20
    seed: int = 0
    format: str = "text"
    min_count: int = 1
    max_order: int = 5

    def validate(self):
        if self.k < 1:
            raise CliError("--k must be >= 1")
        if not 0 <= self.window <= 4:
            raise CliError("--window must be in 0..4")
        if not self.gamma > 1:
            raise CliError("--gamma must be > 1")
        if not 0 < self.rate <= 1:
            raise CliError("--rate must be in (0, 1]")
        if not 0 <= self.realword_share <= 1:
            raise CliError("--realword-share must be in [0, 1]")
        if self.format not in REPORT_FORMATS:
            raise CliError(f"--format must be one of {', '.join(REPORT_FORMATS)}")
        if self.min_count < 1:
            raise CliError("--min-count must be >= 1")
        if not 1 <= self.max_order <= MAX_ORDER:
            raise CliError("--max-order must be in 1..5")
        return self

    def corrector(self) -> CorrectorConfig:
        return CorrectorConfig(k=self.k, window=self.window, real_word_pass=self.real_word,
                               real_word_margin=self.gamma)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the optional JSON config file, then explicit flags."""
    cfg = RunConfig()
    names = {f.name for f in fields(RunConfig)}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(data) - names
        if unknown:
            raise CliError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key, value in data.items():
            setattr(cfg, key, value)
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()


def _load(cfg: RunConfig):
    if not cfg.index_path:
        raise CliError("no index given; build one with `webspell build ... --out PATH` "
                       "and pass it with --index PATH")
    path = Path(cfg.index_path)
    if not path.exists():
        raise CliError(f"index {path} does not exist; build one with `webspell build`")
    index = load_index(path)
    return index, build_bigram_postings(index)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def summary_lines(index) -> list[str]:
    lines = [f"Number of tokens     {index.total_unigram_tokens:,}"]
    for n in ORDERS:
        lines.append(f"Number of {ORDER_NAMES[n]:<10} {index.order_size(n):,}")
    return lines


def cmd_build(args, cfg: RunConfig) -> int:
    if args.mode == "web1t":
        index = ingest_count_files(args.inputs, tolerant=args.tolerant)
    else:
        corpus = "\n".join(_read(p) for p in args.inputs)
        index = build_from_corpus(corpus, max_order=cfg.max_order, min_count=cfg.min_count)
    save_index(index, args.out)
    print("\n".join(summary_lines(index)))
    log.info("wrote %s", args.out)
    return 0


def cmd_check(args, cfg: RunConfig) -> int:
    index, _ = _load(cfg)
    tokens = tokenize(_read(args.file))
    for err in detect_nonword_errors(tokens, index):
        tok = tokens[err.token_index]
        print(f"{err.token_index}\t{tok.start}\t{err.surface}\t{err.kind}")
    return 0


def format_correction(c) -> str:
    chosen = c.chosen if c.chosen is not None else "-"
    line = f"[{c.error.kind}; {chosen}; {c.error.surface}]"
    return line if c.applied else f"{line} unapplied"


def cmd_correct(args, cfg: RunConfig) -> int:
    index, postings = _load(cfg)
    text = _read(args.file)
    result = correct_text(text, index, postings, cfg.corrector())
    _write(result.text, args.output)
    log_lines = "".join(format_correction(c) + "\n" for c in result.corrections)
    if args.log:
        Path(args.log).write_text(log_lines, encoding="utf-8")
    else:
        sys.stderr.write(log_lines)
    return 0


def cmd_eval(args, cfg: RunConfig) -> int:
    index, postings = _load(cfg)
    clean = _read(args.corpus)
    perturbed, gold = induce_errors(clean, index, rate=cfg.rate,
                                    realword_share=cfg.realword_share, seed=cfg.seed)
    tokens = tokenize(perturbed)
    corrections, _ = correct_tokens(tokens, index, postings, cfg.corrector())
    meta = {"seed": cfg.seed, "rate": cfg.rate, "realword_share": cfg.realword_share,
            "k": cfg.k, "window": cfg.window, "real_word_pass": cfg.real_word,
            "gamma": cfg.gamma}
    report = evaluate(gold, corrections, tokens, meta=meta)
    out = emit_report(report, cfg.format)
    if cfg.format == "csv":
        out = f"# seed={cfg.seed}\n" + out
    _write(out, args.output)
    return 0


def cmd_lookup(args, cfg: RunConfig) -> int:
    index, _ = _load(cfg)
    tokens = [t for part in args.tokens for t in part.split()]
    if not 1 <= len(tokens) <= MAX_ORDER:
        raise CliError("lookup takes 1..5 tokens")
    print(index.lookup(tokens))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="webspell", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="JSON file with option defaults (flags override)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_index(p):
        p.add_argument("--index", dest="index_path", help="index artifact from `build`")

    def with_corrector(p):
        p.add_argument("--k", type=int, help="candidates per error (default 10)")
        p.add_argument("--window", type=int, help="preceding context words, 0..4 (default 4)")
        p.add_argument("--real-word", dest="real_word", action="store_true", default=None,
                       help="also run the real-word pass")
        p.add_argument("--gamma", type=float, help="real-word margin (default 10)")

    p = sub.add_parser("build", help="build an index from count files or a corpus")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mode", choices=("web1t", "corpus"), default="web1t")
    p.add_argument("--out", required=True)
    p.add_argument("--min-count", dest="min_count", type=int)
    p.add_argument("--max-order", dest="max_order", type=int)
    p.add_argument("--tolerant", action="store_true",
                   help='also accept the "tokens (count)" display form')
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="list non-word errors")
    p.add_argument("file")
    with_index(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("correct", help="correct a text file")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="corrected text (default: stdout)")
    p.add_argument("--log", help="correction log file (default: stderr)")
    with_index(p)
    with_corrector(p)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("eval", help="induce errors into clean text, correct, score")
    p.add_argument("corpus")
    p.add_argument("-o", "--output")
    p.add_argument("--rate", type=float)
    p.add_argument("--realword-share", dest="realword_share", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=REPORT_FORMATS, help="report format (default text)")
    with_index(p)
    with_corrector(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lookup", help="print the stored count of an n-gram")
    p.add_argument("tokens", nargs="+")
    with_index(p)
    p.set_defaults(func=cmd_lookup)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except (CliError, OSError, ValueError) as exc:
        print(f"webspell: error: {exc}", file=sys.stderr)
        return 1
