"""Orthogonal subsets of roots.

A k-root is represented as a sorted tuple of positive root ids.  The central
routine is :func:`enumerate_omega`, which finds every orthogonal subset of
maximum size inside a universe of positive roots.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import (
    CannotExtend,
    EmptyUniverse,
    MalformedSubsystem,
    NotCoplanar,
    NotInSpan,
    RootsError,
)
from .rootsys import RootSystem

KRoot = tuple  # sorted tuple of positive root ids


class FeatureKind(enum.Enum):
    ALIGNMENT = "alignment"
    CROSSING = "crossing"
    NESTING = "nesting"


_FEATURE_BY_COUNT = {3: FeatureKind.ALIGNMENT, 0: FeatureKind.CROSSING, 1: FeatureKind.NESTING}


@dataclass(frozen=True, eq=False)
class OmegaSet:
    universe: tuple
    kappa: int
    members: list
    array: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def index(self, R) -> int:
        return self._index[tuple(sorted(R))]

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.members)}
            object.__setattr__(self, "_idx", idx)
        return idx


def is_orthogonal(rs: RootSystem, ids) -> bool:
    ids = list(ids)
    if not ids:
        return True
    sub = rs.bmat[np.ix_(ids, ids)]
    return bool(np.all(sub[~np.eye(len(ids), dtype=bool)] == 0))


def as_kroot(rs: RootSystem, ids) -> KRoot:
    """Validate and canonicalize a set of mutually orthogonal positive roots."""
    out = tuple(sorted({int(a) for a in ids}))
    if any(not rs.is_positive(a) for a in out):
        raise RootsError("k-roots consist of positive roots")
    if not is_orthogonal(rs, out):
        raise RootsError("roots are not mutually orthogonal")
    return out


def _cache_path(rs: RootSystem, universe) -> Path | None:
    root = os.environ.get("ROOTS_CACHE_DIR")
    if not root:
        return None
    digest = hashlib.sha1(",".join(map(str, universe)).encode()).hexdigest()[:16]
    return Path(root) / f"omega_{rs.type}_{digest}.json"


def enumerate_omega(rs: RootSystem, U) -> OmegaSet:
    """All maximum-size orthogonal subsets of ``U``, in lexicographic order.

    When ``ROOTS_CACHE_DIR`` is set the result is memoized there as JSON.
    """
    universe = tuple(sorted({int(a) for a in U}))
    if not universe:
        raise EmptyUniverse("Omega is undefined for an empty universe")
    if any(not rs.is_positive(a) for a in universe):
        raise RootsError("universe must consist of positive roots")

    path = _cache_path(rs, universe)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        if tuple(data["universe"]) == universe:
            arr = np.array(data["members"], dtype=np.int32).reshape(-1, data["kappa"])
            return _omega(universe, data["kappa"], arr)

    adj = rs.bmat[np.ix_(universe, universe)] == 0
    np.fill_diagonal(adj, False)
    kappa, local = _kernels.max_cliques(adj)
    # the id map is increasing, so lexicographic order survives
    arr = np.asarray(universe, dtype=np.int32)[local] if local.size else local.astype(np.int32)
    out = _omega(universe, int(kappa), arr)

    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"type": str(rs.type), "universe": list(universe), "kappa": out.kappa,
                   "members": arr.tolist()}
        path.write_text(json.dumps(payload))
    return out


def _omega(universe, kappa, arr) -> OmegaSet:
    arr = np.ascontiguousarray(arr, dtype=np.int32)
    arr.setflags(write=False)
    members = [tuple(int(x) for x in row) for row in arr]
    return OmegaSet(universe, kappa, members, arr)


def _doubled_projection(rs: RootSystem, H, targets):
    """2 * (projection onto Span(H)) for each target id, exact over orthogonal H."""
    H = list(H)
    return rs.bmat[np.ix_(targets, H)].astype(np.int64) @ rs.roots[H]


def in_span(rs: RootSystem, H, alpha) -> bool:
    proj = _doubled_projection(rs, H, [alpha])[0]
    return bool(np.array_equal(proj, 2 * rs.roots[alpha]))


def support(rs: RootSystem, R, alpha) -> KRoot:
    """Elements of the orthogonal set ``R`` not orthogonal to ``alpha``."""
    if not in_span(rs, R, alpha):
        raise NotInSpan(f"{rs.label(alpha)} is not in the span of the given roots")
    return tuple(sorted(b for b in R if rs.bmat[alpha, b] != 0))


def span_roots(rs: RootSystem, H) -> set[int]:
    """All roots (both signs) in the span of the orthogonal set ``H``."""
    H = list(H)
    if not H:
        return set()
    proj = _doubled_projection(rs, H, np.arange(rs.nroots))
    hit = np.all(proj == 2 * rs.roots, axis=1)
    return {int(a) for a in np.flatnonzero(hit)}


def coplanar_center(rs: RootSystem, Q) -> int:
    """The root ``alpha`` with ``sum(Q) = 2 alpha``; raises NotCoplanar otherwise."""
    Q = list(Q)
    if len(Q) != 4 or not is_orthogonal(rs, Q):
        raise NotCoplanar("a coplanar quadruple is four orthogonal roots")
    total = rs.roots[Q].sum(axis=0)
    if np.any(total % 2):
        raise NotCoplanar("sum has odd coefficients")
    alpha = rs.lookup.get(tuple(int(x) for x in total // 2))
    if alpha is None:
        raise NotCoplanar("half the sum is not a root")
    return alpha


def is_coplanar(rs: RootSystem, Q) -> bool:
    try:
        coplanar_center(rs, Q)
    except NotCoplanar:
        return False
    return True


def d_sets(rs: RootSystem, R, k: int) -> list[KRoot]:
    """The k-subsets of ``R`` whose span meets the roots in a ``D_k`` subsystem (k = 4 or 6)."""
    R = sorted(R)
    if k == 4:
        return [Q for Q in combinations(R, 4) if is_coplanar(rs, Q)]
    if k == 6:
        return [H for H in combinations(R, 6) if len(span_roots(rs, H)) == 60]
    raise ValueError("k must be 4 or 6")


def classify_feature(rs: RootSystem, Q) -> FeatureKind:
    coplanar_center(rs, Q)
    simple = rs.induced_simple_system(span_roots(rs, Q))
    n = len(simple & set(Q))
    kind = _FEATURE_BY_COUNT.get(n)
    if kind is None:
        raise MalformedSubsystem(f"quadruple meets the induced simple system in {n} roots")
    return kind


def feature_counts(rs: RootSystem, R) -> tuple[int, int, int]:
    """Numbers of alignments, crossings and nestings among the coplanar quadruples of ``R``."""
    counts = {kind: 0 for kind in FeatureKind}
    for Q in d_sets(rs, R, 4):
        counts[classify_feature(rs, Q)] += 1
    return counts[FeatureKind.ALIGNMENT], counts[FeatureKind.CROSSING], counts[FeatureKind.NESTING]


def extend_to_nroot(rs: RootSystem, partial, avoid=()) -> KRoot:
    """Complete an orthogonal set to an n-root.

    Depth-first in increasing id order, so the result is deterministic.  Roots
    in ``avoid`` are used only if no completion without them exists.
    """
    if not rs.type.admits_nroots:
        raise CannotExtend(f"{rs.type} has no n-roots")
    start = as_kroot(rs, partial)
    avoid = set(avoid)
    zero = rs.bmat[: rs.npos, : rs.npos] == 0

    def complete(allowed):
        cand = np.ones(rs.npos, dtype=bool)
        for b in start:
            cand &= zero[b]
        cand &= allowed
        cand[list(start)] = False
        chosen = list(start)

        def dfs(cand):
            if len(chosen) == rs.rank:
                return True
            ids = np.flatnonzero(cand)
            if len(chosen) + len(ids) < rs.rank:
                return False
            for a in ids:
                chosen.append(int(a))
                nxt = cand & zero[a]
                nxt[: a + 1] = False
                if dfs(nxt):
                    return True
                chosen.pop()
            return False

        return tuple(sorted(chosen)) if dfs(cand) else None

    allowed = np.ones(rs.npos, dtype=bool)
    allowed[[a for a in avoid if rs.is_positive(a)]] = False
    found = complete(allowed)
    if found is None and avoid:
        found = complete(np.ones(rs.npos, dtype=bool))
    if found is None:
        raise CannotExtend("the given roots do not extend to an n-root")
    return found
