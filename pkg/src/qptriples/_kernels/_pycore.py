"""Pure Python / numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_core`` module.
"""

import numpy as np


def max_cliques(adj):
    """All maximum cliques of a graph, as rows of a sorted int32 array in lex order.

    ``adj`` is a square 0/1 matrix without self loops.  Returns ``(kappa, cliques)``.
    """
    adj = np.asarray(adj, dtype=bool)
    n = len(adj)
    if n == 0:
        return 0, np.zeros((0, 0), dtype=np.int32)
    # bit v of rows[u] set iff u ~ v and v > u
    rows = []
    for u in range(n):
        bits = 0
        for v in np.flatnonzero(adj[u]):
            if v > u:
                bits |= 1 << int(v)
        rows.append(bits)

    best = 0
    found = []
    clique = []

    def search(cand):
        nonlocal best, found
        depth = len(clique)
        if cand == 0:
            if depth > best:
                best = depth
                found = []
            if depth == best:
                found.append(tuple(clique))
            return
        if depth + cand.bit_count() < best:
            return
        rest = cand
        while rest:
            if depth + rest.bit_count() < best:
                return
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            clique.append(v)
            search(rows[v] & rest)
            clique.pop()

    search((1 << n) - 1)
    return best, np.array(found, dtype=np.int32).reshape(len(found), best)


def _row_keys(rows, base):
    keys = np.zeros(len(rows), dtype=np.int64)
    for j in range(rows.shape[1]):
        keys = keys * base + rows[:, j]
    return keys


def act_table(images, members):
    """Index of each member's image under each map in ``images``.

    ``images[w, a]`` is the (positive) image id of root ``a`` under map ``w``;
    ``members`` is a lexicographically sorted array of sorted id rows.  Entry
    ``[w, x]`` of the result is the row index of the sorted image of row ``x``,
    or ``-1`` when the image is not a member.
    """
    images = np.asarray(images, dtype=np.int32)
    members = np.asarray(members, dtype=np.int32)
    nw = len(images)
    m, k = members.shape
    out = np.full((nw, m), -1, dtype=np.int32)
    if m == 0:
        return out
    base = int(max(images.max(initial=0), members.max(initial=0))) + 1
    if base ** k < 2**62:
        keys = _row_keys(members.astype(np.int64), base)
        for w in range(nw):
            img = np.sort(images[w][members], axis=1)
            ikeys = _row_keys(img.astype(np.int64), base)
            pos = np.searchsorted(keys, ikeys)
            pos[pos == m] = 0
            hit = keys[pos] == ikeys
            out[w] = np.where(hit, pos, -1)
    else:
        index = {tuple(r): i for i, r in enumerate(members.tolist())}
        for w in range(nw):
            img = np.sort(images[w][members], axis=1)
            out[w] = [index.get(tuple(r), -1) for r in img.tolist()]
    return out


def count_levels(members, refl, positive, universe, chunk=4096):
    """Per member, the number of ``g`` in ``universe`` with ``s_b(g) > 0`` for every ``b`` in the row."""
    members = np.asarray(members, dtype=np.int32)
    refl = np.asarray(refl)
    positive = np.asarray(positive, dtype=bool)
    universe = np.asarray(universe, dtype=np.int32)
    m = len(members)
    out = np.zeros(m, dtype=np.int32)
    if members.size == 0 or universe.size == 0:
        return out
    sub = refl[:, universe]
    for lo in range(0, m, chunk):
        block = members[lo : lo + chunk]
        ok = positive[sub[block]].all(axis=1)
        out[lo : lo + chunk] = ok.sum(axis=1)
    return out


def qp2_violations(levels, rperm, sperm, cap):
    """Count (r, x, s) with lam(rx) > lam(x), lam(srx) < lam(sx) and rx != sx.

    Returns ``(count, witnesses)`` with at most ``cap`` witnesses in (r, x, s) order.
    """
    lam = np.asarray(levels)
    count = 0
    found = []
    for ri, rp in enumerate(np.asarray(rperm)):
        up = lam[rp] > lam
        if not up.any():
            continue
        xs = np.flatnonzero(up)
        rx = rp[xs]
        bad = np.zeros((len(xs), len(sperm)), dtype=bool)
        for si, sp in enumerate(np.asarray(sperm)):
            bad[:, si] = (lam[sp[rx]] < lam[sp[xs]]) & (rx != sp[xs])
        count += int(bad.sum())
        if len(found) < cap:
            for xi, si in zip(*np.nonzero(bad)):
                found.append((ri, int(xs[xi]), int(si)))
                if len(found) >= cap:
                    break
    return count, found
