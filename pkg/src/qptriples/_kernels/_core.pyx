# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: bitset clique search, action tables, level counts, QP2 sweep."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef struct Search:
    int n
    int nw
    uint64_t* rows      # n * nw, neighbours greater than the row vertex
    uint64_t* cand      # (n + 1) * nw candidate sets per depth
    int* clique
    int best


cdef inline int _popcount(const uint64_t* s, int nw) nogil:
    cdef int i, c = 0
    for i in range(nw):
        c += __builtin_popcountll(s[i])
    return c


cdef void _search(Search* st, int depth, list found):
    cdef uint64_t* cand = st.cand + depth * st.nw
    cdef uint64_t* nxt = st.cand + (depth + 1) * st.nw
    cdef uint64_t* row
    cdef int nw = st.nw
    cdef int remaining = _popcount(cand, nw)
    cdef int w, b, v, i
    cdef uint64_t word
    if remaining == 0:
        if depth > st.best:
            st.best = depth
            del found[:]
        if depth == st.best:
            found.append(tuple([st.clique[i] for i in range(depth)]))
        return
    if depth + remaining < st.best:
        return
    for w in range(nw):
        while cand[w]:
            if depth + remaining < st.best:
                return
            word = cand[w]
            b = __builtin_ctzll(word)
            cand[w] = word & (word - 1)
            remaining -= 1
            v = w * 64 + b
            row = st.rows + v * nw
            for i in range(nw):
                nxt[i] = row[i] & cand[i]
            st.clique[depth] = v
            _search(st, depth + 1, found)


def max_cliques(adj):
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] a = np.ascontiguousarray(np.asarray(adj, dtype=bool), dtype=np.uint8)
    cdef int n = a.shape[0]
    if n == 0:
        return 0, np.zeros((0, 0), dtype=np.int32)
    cdef Search st
    cdef int u, v
    st.n = n
    st.nw = (n + 63) // 64
    st.best = 0
    st.rows = <uint64_t*> malloc(n * st.nw * sizeof(uint64_t))
    st.cand = <uint64_t*> malloc((n + 1) * st.nw * sizeof(uint64_t))
    st.clique = <int*> malloc((n + 1) * sizeof(int))
    found = []
    try:
        memset(st.rows, 0, n * st.nw * sizeof(uint64_t))
        memset(st.cand, 0, (n + 1) * st.nw * sizeof(uint64_t))
        for u in range(n):
            for v in range(u + 1, n):
                if a[u, v]:
                    st.rows[u * st.nw + v // 64] |= (<uint64_t> 1) << (v % 64)
        for v in range(n):
            st.cand[v // 64] |= (<uint64_t> 1) << (v % 64)
        _search(&st, 0, found)
        best = st.best
    finally:
        free(st.rows)
        free(st.cand)
        free(st.clique)
    return best, np.array(found, dtype=np.int32).reshape(len(found), best)


cdef inline int _cmp_row(const int32_t* a, const int32_t* b, int k) nogil:
    cdef int j
    for j in range(k):
        if a[j] < b[j]:
            return -1
        if a[j] > b[j]:
            return 1
    return 0


def act_table(images, members):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] img = np.ascontiguousarray(images, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] mem = np.ascontiguousarray(members, dtype=np.int32)
    cdef int nw = img.shape[0]
    cdef int m = mem.shape[0]
    cdef int k = mem.shape[1] if m else 0
    cdef cnp.ndarray[cnp.int32_t, ndim=2] out = np.full((nw, m), -1, dtype=np.int32)
    if m == 0:
        return out
    cdef int32_t* tmp = <int32_t*> malloc(k * sizeof(int32_t))
    cdef const int32_t* base = <const int32_t*> mem.data
    cdef int w, x, j, i, lo, hi, mid, c
    cdef int32_t t
    try:
        for w in range(nw):
            for x in range(m):
                for j in range(k):
                    t = img[w, mem[x, j]]
                    i = j
                    while i > 0 and tmp[i - 1] > t:
                        tmp[i] = tmp[i - 1]
                        i -= 1
                    tmp[i] = t
                lo = 0
                hi = m - 1
                while lo <= hi:
                    mid = (lo + hi) >> 1
                    c = _cmp_row(base + mid * k, tmp, k)
                    if c == 0:
                        out[w, x] = mid
                        break
                    elif c < 0:
                        lo = mid + 1
                    else:
                        hi = mid - 1
    finally:
        free(tmp)
    return out


def count_levels(members, refl, positive, universe, chunk=None):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] mem = np.ascontiguousarray(members, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] rt = np.ascontiguousarray(refl, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] pos = np.ascontiguousarray(positive, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] uni = np.ascontiguousarray(universe, dtype=np.int32)
    cdef int m = mem.shape[0]
    cdef int k = mem.shape[1] if m else 0
    cdef int nu = uni.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.zeros(m, dtype=np.int32)
    cdef int x, j, g, cnt, gamma
    cdef bint ok
    for x in range(m):
        cnt = 0
        for g in range(nu):
            gamma = uni[g]
            ok = True
            for j in range(k):
                if not pos[rt[mem[x, j], gamma]]:
                    ok = False
                    break
            if ok:
                cnt += 1
        out[x] = cnt
    return out


def qp2_violations(levels, rperm, sperm, int cap):
    cdef cnp.ndarray[cnp.int32_t, ndim=1] lam = np.ascontiguousarray(levels, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] rp = np.ascontiguousarray(rperm, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] sp = np.ascontiguousarray(sperm, dtype=np.int32)
    cdef int nr = rp.shape[0]
    cdef int ns = sp.shape[0]
    cdef int m = lam.shape[0]
    cdef int r, x, s, rx, sx, srx
    cdef long count = 0
    found = []
    for r in range(nr):
        for x in range(m):
            rx = rp[r, x]
            if lam[rx] <= lam[x]:
                continue
            for s in range(ns):
                sx = sp[s, x]
                srx = sp[s, rx]
                if lam[srx] < lam[sx] and rx != sx:
                    count += 1
                    if len(found) < cap:
                        found.append((r, x, s))
    return count, found
