#!/usr/bin/env python3
"""Assemble a public-domain English corpus for desk-scale evaluation.

The ``shakespeare`` sdist on PyPI bundles Project Gutenberg texts of
Shakespeare's works and of Milton.  This script downloads it with pip,
keeps one edition of each work, and writes::

    data/corpus/train.txt     training text (everything but the held-out work)
    data/corpus/heldout.txt   Hamlet, never seen during index building

Run from the repository root: ``python scripts/fetch_corpus.py``.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
import tarfile
import tempfile
from pathlib import Path

PACKAGE = "shakespeare==0.6"
HELDOUT = "hamlet_gut.txt"
MILTON = (
    "paradise_lost_(no_introduction)_gut.txt",
    "paradise_regained_gut.txt",
    "areopagitica_gut.txt",
    "poetical_works_gut.txt",
    "lallegro_il_penseroso_comus_and_lycidas_gut.txt",
)
EXTRA = ("shksprdata/ancillary/britannica-11th.txt",)


def _download(dest: Path) -> Path:
    subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "--no-binary", ":all:",
                    "-q", "-d", str(dest), PACKAGE], check=True)
    (archive,) = dest.glob("shakespeare-*.tar.gz")
    return archive


def _select(names: list[str]) -> tuple[list[str], str]:
    plays = sorted(n for n in names
                   if "/shksprdata/texts/" in n and n.endswith("_gut.txt"))
    heldout = next(n for n in plays if n.endswith("/" + HELDOUT))
    train = [n for n in plays if n != heldout]
    train += sorted(n for n in names if any(n.endswith("/miltondata/texts/" + m) for m in MILTON))
    train += sorted(n for n in names if any(n.endswith("/" + e) for e in EXTRA))
    return train, heldout


def build(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        archive = _download(Path(tmp))
        with tarfile.open(archive) as tar:
            names = tar.getnames()
            train, heldout = _select(names)

            def read(name):
                return tar.extractfile(name).read().decode("utf-8", errors="replace")

            (out_dir / "train.txt").write_text(
                "\n\n".join(read(n).strip() for n in train) + "\n", encoding="utf-8")
            (out_dir / "heldout.txt").write_text(read(heldout).strip() + "\n", encoding="utf-8")
    print(f"wrote {out_dir}/train.txt ({len(train)} works) and {out_dir}/heldout.txt")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", default="data/corpus", type=Path)
    args = parser.parse_args(argv)
    build(args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
