"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Timings are the best of ``--repeat`` runs over a fixed, seeded workload.
"""

from __future__ import annotations

import argparse
import importlib
import random
import timeit

import numpy as np

from webspell import _pykernels


def workload(seed: int = 0):
    rng = random.Random(seed)
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    pairs = [("".join(rng.choice(alphabet) for _ in range(rng.randint(3, 12))),
              "".join(rng.choice(alphabet) for _ in range(rng.randint(3, 12))))
             for _ in range(2000)]
    np_rng = np.random.default_rng(seed)
    keys = np.unique(np_rng.integers(0, 50_000, size=(500_000, 3)).astype(np.uint32), axis=0)
    queries = [tuple(int(v) for v in keys[i]) for i in np_rng.integers(0, len(keys), 5000)]
    queries += [tuple(int(v) for v in q) for q in np_rng.integers(0, 50_000, size=(5000, 3))]
    return pairs, keys, queries


def cases(impl, pairs, keys, queries):
    return {
        "levenshtein": lambda: [impl.levenshtein(a, b) for a, b in pairs],
        "osa_distance": lambda: [impl.osa_distance(a, b) for a, b in pairs],
        "lcs": lambda: [impl.lcs(a, b) for a, b in pairs],
        "search_row": lambda: [impl.search_row(keys, q) for q in queries],
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = {"python": _pykernels}
    try:
        backends["cython"] = importlib.import_module("webspell._kernels")
    except ImportError:
        print("compiled extension not built; timing the fallback only")

    pairs, keys, queries = workload()
    print(f"{len(pairs)} string pairs, {len(queries)} row searches over {len(keys):,} keys")
    timings = {}
    for name, impl in backends.items():
        for case, fn in cases(impl, pairs, keys, queries).items():
            timings[name, case] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    print(f"{'kernel':<14}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for case in cases(_pykernels, pairs, keys, queries):
        py = timings["python", case] * 1e3
        if ("cython", case) in timings:
            cy = timings["cython", case] * 1e3
            print(f"{case:<14}{py:>14.1f}{cy:>14.1f}{py / cy:>9.1f}x")
        else:
            print(f"{case:<14}{py:>14.1f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
