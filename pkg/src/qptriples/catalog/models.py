"""Perfect matchings and permutations as orthogonal sets in type D_{2k}."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from ..errors import BijectionFailure, InvalidType
from ..rootsys import RootSystem
from .universes import eps_root


@dataclass(frozen=True)
class Matching:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        pts = sorted(x for b in blocks for x in b)
        if any(len(b) != 2 for b in blocks) or pts != list(range(1, 2 * len(blocks) + 1)):
            raise ValueError(f"{self.blocks!r} is not a perfect matching of [2k]")
        object.__setattr__(self, "blocks", blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def sigma(self) -> tuple:
        """One-line notation of the two-line permutation ``1 2 .. 2k -> i1 j1 .. ik jk``."""
        return tuple(x for b in self.blocks for x in b)

    def tau(self) -> tuple:
        t = [0] * (2 * self.k)
        for i, j in self.blocks:
            t[i - 1], t[j - 1] = j, i
        return tuple(t)


def all_matchings(n: int) -> list[Matching]:
    """All perfect matchings of ``[n]``, generated by pairing the smallest free point."""

    def rec(free):
        if not free:
            yield ()
            return
        a, rest = free[0], free[1:]
        for t, b in enumerate(rest):
            for tail in rec(rest[:t] + rest[t + 1:]):
                yield ((a, b),) + tail

    return [Matching(m) for m in rec(tuple(range(1, n + 1)))]


def inversions(p) -> list[tuple[int, int]]:
    n = len(p)
    return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if p[i] > p[j]]


def length(p) -> int:
    return len(inversions(p))


def inverse(p) -> tuple:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def matching_diagram(M: Matching) -> list[tuple[int, int]]:
    t = M.tau()
    n = 2 * M.k
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if t[i - 1] > j and t[j - 1] > i]


def matching_stats(M: Matching) -> dict:
    """sigma, tau, inversion set, diagram and the map between them (checked to be a bijection)."""
    s, t = M.sigma(), M.tau()
    inv = inversions(s)
    diag = matching_diagram(M)
    psi = {(i, j): (t[s[i - 1] - 1], s[j - 1]) for i, j in inv}
    if sorted(psi.values()) != sorted(diag) or len(set(psi.values())) != len(psi):
        raise BijectionFailure(f"psi is not a bijection for {M.blocks}")
    return {"sigma": s, "tau": t, "inversions": inv, "diagram": diag, "psi": psi}


def _half_rank(rs: RootSystem) -> int:
    if rs.type.family != "D" or rs.rank % 2:
        raise InvalidType("the matching and permutation models live in D_{2k}")
    return rs.rank // 2


def matching_to_kroot(rs: RootSystem, M: Matching) -> tuple:
    if 2 * M.k != rs.rank:
        raise ValueError("matching size does not fit the root system")
    _half_rank(rs)
    return tuple(sorted(eps_root(rs, i, j) for i, j in M.blocks))


def matching_positions(rs: RootSystem) -> dict:
    """Root id of ``e_i + e_j`` -> matrix cell ``(i, j)``."""
    n = 2 * _half_rank(rs)
    return {eps_root(rs, i, j): (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}


def matching_residues_formula(rs: RootSystem, M: Matching) -> set[int]:
    return {eps_root(rs, i, j) for i, j in matching_diagram(M)}


def couple_completion(rs: RootSystem, R) -> tuple:
    """Add ``e_i - e_j`` for every ``e_i + e_j`` in R (an n-root from a matching k-root)."""
    pos = matching_positions(rs)
    return tuple(sorted(set(R) | {eps_root(rs, *pos[b], -1) for b in R}))


def all_permutations(k: int) -> list[tuple]:
    return list(permutations(range(1, k + 1)))


def perm_to_kroot(rs: RootSystem, pi) -> tuple:
    k = _half_rank(rs)
    if sorted(pi) != list(range(1, k + 1)):
        raise ValueError(f"{pi!r} is not a permutation of [{k}]")
    return tuple(sorted(eps_root(rs, i, pi[i - 1] + k) for i in range(1, k + 1)))


def perm_positions(rs: RootSystem) -> dict:
    """Root id of ``e_i + e_{j+k}`` -> board cell ``(i, j)``."""
    k = _half_rank(rs)
    return {eps_root(rs, i, j + k): (i, j) for i in range(1, k + 1) for j in range(1, k + 1)}


def perm_diagram(pi) -> list[tuple[int, int]]:
    k = len(pi)
    pinv = inverse(pi)
    return [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if pi[i - 1] > j and pinv[j - 1] > i]


def perm_residues_formula(rs: RootSystem, pi) -> set[int]:
    k = len(pi)
    return {eps_root(rs, i, j + k) for i, j in perm_diagram(pi)}


def matching_label(rs: RootSystem):
    """Label ``e_i + e_j`` as ``u<ij>``."""
    pos = matching_positions(rs)
    return lambda b: f"u{pos[b][0]}{pos[b][1]}"
