"""Universes of positive roots and the triples built from them.

Selectors are small strings so the CLI and tests share one vocabulary:

``all``           every positive root
``odd:p``         roots whose coefficient at node p is odd
``oddpair:p``     odd at node p and at the last node (``oddpair:p:q`` for another node)
``height:i:j``    roots whose coefficient at node i equals j
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from ..errors import InvalidNode, InvalidType
from ..rootsys import RootSystem


def build_U(rs: RootSystem, selector="all") -> tuple:
    sel = selector.strip().lower()
    if sel == "all":
        return tuple(rs.positive_ids)
    m = re.fullmatch(r"odd:(\d+)", sel)
    if m:
        return _odd(rs, int(m.group(1)))
    m = re.fullmatch(r"oddpair:(\d+)(?::(\d+))?", sel)
    if m:
        p = int(m.group(1))
        q = int(m.group(2)) if m.group(2) else rs.rank
        if p == q:
            raise InvalidNode("oddpair needs two distinct nodes")
        return tuple(sorted(set(_odd(rs, p)) & set(_odd(rs, q))))
    m = re.fullmatch(r"height:(\d+):(\d+)", sel)
    if m:
        return tuple(rs.height_filter(int(m.group(1)), int(m.group(2))))
    raise ValueError(f"unknown universe selector {selector!r}")


def _odd(rs: RootSystem, p: int) -> tuple:
    rs._check_node(p)
    col = rs.roots[: rs.npos, p - 1]
    return tuple(int(a) for a in np.flatnonzero(col % 2 == 1))


def triple_T(rs: RootSystem, p: int):
    """``(I, U)`` with I all nodes but p and U the roots odd at p."""
    rs._check_node(p)
    return tuple(i for i in rs.nodes if i != p), build_U(rs, f"odd:{p}")


def triple_Tprime(rs: RootSystem, p: int):
    """Type D variant: U odd at p and at n, with both p and n removed from I."""
    if rs.type.family != "D":
        raise InvalidType("the paired construction is defined in type D")
    n = rs.rank
    if not 1 <= p <= n - 2:
        raise InvalidNode(f"p must lie in 1..{n - 2}")
    return tuple(i for i in rs.nodes if i not in (p, n)), build_U(rs, f"oddpair:{p}")


# epsilon coordinates for types A and D

def simple_epsilon(rs: RootSystem) -> np.ndarray:
    """Rows are the simple roots in the usual orthonormal coordinates."""
    fam, n = rs.type.family, rs.rank
    if fam == "A":
        E = np.zeros((n, n + 1), dtype=np.int64)
        for i in range(n):
            E[i, i], E[i, i + 1] = 1, -1
        return E
    if fam == "D":
        E = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            E[i, i], E[i, i + 1] = 1, -1
        E[n - 1, n - 2] = E[n - 1, n - 1] = 1
        return E
    raise InvalidType("epsilon coordinates are provided for types A and D")


@lru_cache(maxsize=None)
def epsilon_vectors(rs: RootSystem) -> np.ndarray:
    vecs = rs.roots @ simple_epsilon(rs)
    vecs.setflags(write=False)
    return vecs


@lru_cache(maxsize=None)
def _epsilon_lookup(rs: RootSystem) -> dict:
    return {tuple(int(x) for x in v): a for a, v in enumerate(epsilon_vectors(rs))}


def epsilon_id(rs: RootSystem, vec) -> int:
    """Root id of an epsilon-coordinate vector."""
    key = tuple(int(x) for x in vec)
    try:
        return _epsilon_lookup(rs)[key]
    except KeyError:
        raise InvalidNode(f"{list(key)} is not a root of {rs.type}") from None


def eps_root(rs: RootSystem, i: int, j: int, sign: int = 1) -> int:
    """Id of ``e_i + sign * e_j`` (1-based indices)."""
    dim = rs.rank + 1 if rs.type.family == "A" else rs.rank
    v = np.zeros(dim, dtype=np.int64)
    v[i - 1] += 1
    v[j - 1] += sign
    return epsilon_id(rs, v)


def epsilon_label(rs: RootSystem, a: int) -> str:
    v = epsilon_vectors(rs)[a]
    out = ""
    for i in np.flatnonzero(v):
        c = int(v[i])
        sign = "-" if c < 0 else ("+" if out else "")
        out += f"{sign}{'' if abs(c) == 1 else abs(c)}e{i + 1}"
    return out
