# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: edit distances, LCS and sorted-table row search."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint32_t


cdef inline Py_ssize_t _min3(Py_ssize_t x, Py_ssize_t y, Py_ssize_t z) nogil:
    if y < x:
        x = y
    if z < x:
        x = z
    return x


def levenshtein(str a, str b):
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t m = len(a), n = len(b), i, j
    if n == 0:
        return m
    cdef Py_ssize_t *prev = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *cur = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *tmp
    cdef Py_UCS4 ca
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(n + 1):
            prev[j] = j
        for i in range(1, m + 1):
            ca = a[i - 1]
            cur[0] = i
            for j in range(1, n + 1):
                cur[j] = _min3(prev[j - 1] + (ca != <Py_UCS4> b[j - 1]),
                               prev[j] + 1, cur[j - 1] + 1)
            tmp = prev
            prev = cur
            cur = tmp
        return prev[n]
    finally:
        free(prev)
        free(cur)


def osa_distance(str a, str b):
    """Levenshtein plus adjacent transposition (optimal string alignment)."""
    if a == b:
        return 0
    cdef Py_ssize_t m = len(a), n = len(b), i, j, cost
    if m == 0 or n == 0:
        return m or n
    cdef Py_ssize_t *before = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *prev = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *cur = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *tmp
    if before == NULL or prev == NULL or cur == NULL:
        free(before)
        free(prev)
        free(cur)
        raise MemoryError()
    try:
        for j in range(n + 1):
            prev[j] = j
            before[j] = 0
        for i in range(1, m + 1):
            cur[0] = i
            for j in range(1, n + 1):
                cost = _min3(prev[j - 1] + (<Py_UCS4> a[i - 1] != <Py_UCS4> b[j - 1]),
                             prev[j] + 1, cur[j - 1] + 1)
                if (i > 1 and j > 1 and <Py_UCS4> a[i - 1] == <Py_UCS4> b[j - 2]
                        and <Py_UCS4> a[i - 2] == <Py_UCS4> b[j - 1]
                        and before[j - 2] + 1 < cost):
                    cost = before[j - 2] + 1
                cur[j] = cost
            tmp = before
            before = prev
            prev = cur
            cur = tmp
        return prev[n]
    finally:
        free(before)
        free(prev)
        free(cur)


def lcs(str a, str b):
    cdef Py_ssize_t m = len(a), n = len(b), i, j, w = n + 1
    cdef Py_ssize_t *t = <Py_ssize_t *> malloc((m + 1) * w * sizeof(Py_ssize_t))
    if t == NULL:
        raise MemoryError()
    out = []
    try:
        for j in range(w):
            t[j] = 0
        for i in range(1, m + 1):
            t[i * w] = 0
            for j in range(1, n + 1):
                if <Py_UCS4> a[i - 1] == <Py_UCS4> b[j - 1]:
                    t[i * w + j] = t[(i - 1) * w + j - 1] + 1
                elif t[(i - 1) * w + j] >= t[i * w + j - 1]:
                    t[i * w + j] = t[(i - 1) * w + j]
                else:
                    t[i * w + j] = t[i * w + j - 1]
        length = t[m * w + n]
        i, j = m, n
        while i > 0 and j > 0:
            if <Py_UCS4> a[i - 1] == <Py_UCS4> b[j - 1]:
                out.append(a[i - 1])
                i -= 1
                j -= 1
            elif t[(i - 1) * w + j] >= t[i * w + j - 1]:
                i -= 1
            else:
                j -= 1
    finally:
        free(t)
    return length, "".join(reversed(out))


def search_row(const uint32_t[:, :] keys, query):
    cdef Py_ssize_t rows = keys.shape[0], width = keys.shape[1]
    if len(query) != width:
        raise ValueError("query width does not match table order")
    cdef uint32_t q[5]
    cdef Py_ssize_t c, lo = 0, hi = rows, mid
    cdef int cmp
    if width > 5:
        raise ValueError("orders above 5 are not supported")
    for c in range(width):
        if query[c] < 0 or query[c] > 0xFFFFFFFF:
            return -1
        q[c] = query[c]
    while lo < hi:
        mid = (lo + hi) >> 1
        cmp = 0
        for c in range(width):
            if keys[mid, c] < q[c]:
                cmp = -1
                break
            if keys[mid, c] > q[c]:
                cmp = 1
                break
        if cmp == 0:
            return mid
        if cmp < 0:
            lo = mid + 1
        else:
            hi = mid
    return -1
