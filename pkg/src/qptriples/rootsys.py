"""Simply-laced root systems in simple-root coordinates.

Roots are integer coefficient vectors over the simple roots.  Every root gets
an integer id: positive roots take ids ``0 .. npos-1`` ordered by height, and
the negative of root ``a`` is ``a + npos``.  Within one height, positive roots
are ordered by descending lexicographic coefficient vector, so the simple root
at Dynkin node ``i`` has id ``i - 1``.

Dynkin node labels follow the usual convention: ``A_n`` is the chain
``1 - 2 - ... - n``; ``D_n`` is the chain ``1 - ... - (n-2)`` with both
``n-1`` and ``n`` attached to ``n-2``; ``E_n`` is the chain
``1 - 3 - 4 - ... - n`` with node ``2`` attached to ``4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidNode, InvalidType, NotASubsystem


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "D", "E"):
            raise InvalidType(f"unsupported family {self.family!r}")
        if self.family == "A" and self.rank < 1:
            raise InvalidType("A_n requires n >= 1")
        if self.family == "D" and self.rank < 4:
            raise InvalidType("D_n requires n >= 4")
        if self.family == "E" and self.rank not in (6, 7, 8):
            raise InvalidType("E_n requires n in {6, 7, 8}")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"\s*([A-Za-z])_?(\d+)\s*", text)
        if not m:
            raise InvalidType(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"

    def edges(self) -> list[tuple[int, int]]:
        n = self.rank
        if self.family == "A":
            return [(i, i + 1) for i in range(1, n)]
        if self.family == "D":
            return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
        return [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]

    def cartan(self) -> np.ndarray:
        c = 2 * np.eye(self.rank, dtype=np.int64)
        for i, j in self.edges():
            c[i - 1, j - 1] = c[j - 1, i - 1] = -1
        return c

    @property
    def admits_nroots(self) -> bool:
        if self.family == "E":
            return self.rank in (7, 8)
        if self.family == "D":
            return self.rank % 2 == 0
        return self.rank == 1


@dataclass(frozen=True)
class HeightProfile:
    root: int
    height: int
    i_heights: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RootSystem:
    """All roots of one simply-laced type plus precomputed lookup tables.

    ``bmat[a, b]`` is the bilinear form, ``refl[a, b]`` the id of
    ``s_a(b)``, ``absid[a]`` the id of ``|a|``.
    """

    type: DynkinType
    cartan: np.ndarray
    roots: np.ndarray
    npos: int
    lookup: dict = field(repr=False)
    bmat: np.ndarray = field(repr=False)
    refl: np.ndarray = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def nroots(self) -> int:
        return len(self.roots)

    @property
    def positive_ids(self) -> range:
        return range(self.npos)

    @property
    def simple_ids(self) -> range:
        return range(self.rank)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @property
    def absid(self) -> np.ndarray:
        return np.concatenate([np.arange(self.npos), np.arange(self.npos)]).astype(np.int32)

    @property
    def positive_mask(self) -> np.ndarray:
        mask = np.zeros(self.nroots, dtype=np.uint8)
        mask[: self.npos] = 1
        return mask

    def simple(self, node: int) -> int:
        self._check_node(node)
        return node - 1

    def _check_node(self, node: int) -> None:
        if not 1 <= node <= self.rank:
            raise InvalidNode(f"node {node} not in 1..{self.rank} for {self.type}")

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.roots[a])

    def id_of(self, coeffs) -> int:
        return self.lookup[tuple(int(c) for c in coeffs)]

    def neg(self, a: int) -> int:
        return a + self.npos if a < self.npos else a - self.npos

    def abs(self, a: int) -> int:
        return a if a < self.npos else a - self.npos

    def is_positive(self, a: int) -> bool:
        return a < self.npos

    def bilinear(self, a: int, b: int) -> int:
        return int(self.bmat[a, b])

    def reflect(self, a: int, b: int) -> int:
        return int(self.refl[a, b])

    def heights(self, a: int) -> HeightProfile:
        c = self.coeffs(a)
        return HeightProfile(a, sum(c), c)

    def height(self, a: int) -> int:
        return int(self.roots[a].sum())

    def height_filter(self, node: int, j: int) -> list[int]:
        """Positive roots whose coefficient at ``node`` equals ``j``."""
        self._check_node(node)
        col = self.roots[: self.npos, node - 1]
        return [int(a) for a in np.flatnonzero(col == j)]

    def highest_root(self, nodes=None) -> int:
        """Highest root of the whole system or of the parabolic subsystem on ``nodes``."""
        if nodes is None:
            return self.npos - 1
        sub = [a for a in sorted(self.parabolic_subroots(nodes)) if a < self.npos]
        if not sub:
            raise InvalidNode("empty node set has no highest root")
        # ids are height-ordered; the maximum of an irreducible subsystem is unique
        return sub[-1]

    def parabolic_subroots(self, nodes) -> set[int]:
        """All roots (both signs) supported on the given node labels."""
        nodes = set(nodes)
        for i in nodes:
            self._check_node(i)
        off = [i - 1 for i in self.nodes if i not in nodes]
        if not nodes:
            return set()
        support_ok = np.all(self.roots[:, off] == 0, axis=1) if off else np.ones(self.nroots, bool)
        return {int(a) for a in np.flatnonzero(support_ok)}

    def induced_simple_system(self, psi) -> set[int]:
        """Simple system of a subsystem: positive elements not a sum of two positive elements."""
        psi = set(psi)
        for a in psi:
            for b in psi:
                if int(self.refl[a, b]) not in psi:
                    raise NotASubsystem(f"s_{a}({b}) leaves the set")
        pos = sorted(a for a in psi if a < self.npos)
        vecs = {tuple(self.roots[a]) for a in pos}
        simple = set()
        for a in pos:
            va = self.roots[a]
            if not any(tuple(va - self.roots[b]) in vecs for b in pos if b != a):
                simple.add(a)
        return simple

    def label(self, a: int) -> str:
        c = self.roots[a]
        sign = "-" if a >= self.npos else ""
        body = "".join(str(abs(int(x))) for x in c) if np.abs(c).max() < 10 else ",".join(
            str(abs(int(x))) for x in c
        )
        return sign + body

    def parse_root(self, text: str) -> int:
        """Inverse of :meth:`label`; also accepts ``a<node>`` for simple roots."""
        text = text.strip()
        if re.fullmatch(r"a\d+", text):
            return self.simple(int(text[1:]))
        sign = -1 if text.startswith("-") else 1
        body = text.lstrip("-")
        parts = body.split(",") if "," in body else list(body)
        try:
            return self.id_of([sign * int(x) for x in parts])
        except (KeyError, ValueError):
            raise InvalidNode(f"{text!r} is not a root of {self.type}") from None


def _close_under_reflections(cartan: np.ndarray) -> list[tuple[int, ...]]:
    rank = len(cartan)
    start = [tuple(int(x) for x in row) for row in np.eye(rank, dtype=np.int64)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for v in frontier:
            vec = np.array(v)
            bv = cartan @ vec
            for i in range(rank):
                w = vec.copy()
                w[i] -= bv[i]
                t = tuple(int(x) for x in w)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystem:
    t = DynkinType(family, rank)
    cartan = t.cartan()
    allroots = _close_under_reflections(cartan)
    pos = [r for r in allroots if all(c >= 0 for c in r)]
    pos.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    neg = [tuple(-c for c in r) for r in pos]
    roots = np.array(pos + neg, dtype=np.int64)
    npos = len(pos)
    lookup = {tuple(int(x) for x in r): i for i, r in enumerate(roots)}
    bmat = (roots @ cartan @ roots.T).astype(np.int8)
    n = len(roots)
    refl = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        images = roots - np.outer(bmat[a], roots[a])
        refl[a] = [lookup[tuple(int(x) for x in v)] for v in images]
    for arr in (roots, bmat, refl, cartan):
        arr.setflags(write=False)
    return RootSystem(t, cartan, roots, npos, lookup, bmat, refl)


def build_root_system(t) -> RootSystem:
    """Build (and cache) the root system of a Dynkin type given as ``DynkinType`` or ``"E8"``."""
    if isinstance(t, str):
        t = DynkinType.parse(t)
    elif not isinstance(t, DynkinType):
        t = DynkinType(*t)
    return _build(t.family, t.rank)


build_root_system.cache_clear = _build.cache_clear
