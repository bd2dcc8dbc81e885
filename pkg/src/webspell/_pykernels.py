"""Pure-Python versions of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature and
results; :mod:`webspell.kernels` picks one at import time.
"""

import numpy as np


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cost = prev[j - 1] + (ca != cb)
            if prev[j] + 1 < cost:
                cost = prev[j] + 1
            if cur[j - 1] + 1 < cost:
                cost = cur[j - 1] + 1
            cur.append(cost)
        prev = cur
    return prev[-1]


def osa_distance(a: str, b: str) -> int:
    """Levenshtein plus adjacent transposition (optimal string alignment)."""
    if a == b:
        return 0
    m, n = len(a), len(b)
    if not m or not n:
        return m or n
    before = [0] * (n + 1)
    prev = list(range(n + 1))
    for i in range(1, m + 1):
        cur = [i] + [0] * n
        for j in range(1, n + 1):
            cost = prev[j - 1] + (a[i - 1] != b[j - 1])
            if prev[j] + 1 < cost:
                cost = prev[j] + 1
            if cur[j - 1] + 1 < cost:
                cost = cur[j - 1] + 1
            if (i > 1 and j > 1 and a[i - 1] == b[j - 2]
                    and a[i - 2] == b[j - 1] and before[j - 2] + 1 < cost):
                cost = before[j - 2] + 1
            cur[j] = cost
        before, prev = prev, cur
    return prev[n]


def lcs(a: str, b: str) -> tuple[int, str]:
    m, n = len(a), len(b)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        row, up = table[i], table[i - 1]
        ca = a[i - 1]
        for j in range(1, n + 1):
            if ca == b[j - 1]:
                row[j] = up[j - 1] + 1
            elif up[j] >= row[j - 1]:
                row[j] = up[j]
            else:
                row[j] = row[j - 1]
    # traceback order: match, then up, then left
    out = []
    i, j = m, n
    while i and j:
        if a[i - 1] == b[j - 1]:
            out.append(a[i - 1])
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return table[m][n], "".join(reversed(out))


def search_row(keys: np.ndarray, query) -> int:
    """Row position of ``query`` in the lexicographically sorted ``keys``, or -1."""
    if keys.ndim != 2 or len(query) != keys.shape[1]:
        raise ValueError("query width does not match table order")
    q = tuple(int(v) for v in query)
    lo, hi = 0, keys.shape[0]
    # slicing a column would copy it; probing rows keeps each step O(order)
    while lo < hi:
        mid = (lo + hi) // 2
        if tuple(keys[mid].tolist()) < q:
            lo = mid + 1
        else:
            hi = mid
    if lo < keys.shape[0] and tuple(keys[lo].tolist()) == q:
        return lo
    return -1
