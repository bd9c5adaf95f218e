"""The 56-root and 27-root triples: height decomposition, the iota map, a/b/c labels.

Roots of the 27-element universe ``U'`` (odd at node 7 of E7) are handled in
E7 ids; E8 ids are used for the 56-element universe.  ``embed_e7`` moves ids
from E7 into E8 by padding the coefficient at node 8 with zero, which is the
usual identification of E7 with the 8-height-0 roots of E8.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

import numpy as np

from ..errors import ContainsTheta, CrossCheckMismatch, InvalidType, LabellingFailure, NotATriple
from ..ortho import enumerate_omega, support
from ..poly import HafnianPoly
from ..qp import standard_act
from ..residue import levels as compute_levels
from ..residue import residues_wrt
from ..rootsys import RootSystem, build_root_system
from .models import inversions
from .universes import build_U


def _require(rs: RootSystem, name: str):
    if str(rs.type) != name:
        raise InvalidType(f"expected {name}, got {rs.type}")


def height_layers(rs: RootSystem) -> dict[int, tuple]:
    """E8 positive roots split by their coefficient at node 8."""
    _require(rs, "E8")
    return {i: tuple(rs.height_filter(8, i)) for i in (0, 1, 2)}


def eta(rs: RootSystem) -> int:
    """Second highest root ``theta - alpha_8``."""
    _require(rs, "E8")
    return rs.reflect(rs.simple(8), rs.highest_root())


def minimal_nroot(rs: RootSystem) -> tuple:
    """{a2, a3, a5, a7, th4, th6, th7, th8}: highest roots of the D4, D6, E7, E8 chain plus four simples."""
    _require(rs, "E8")
    return tuple(sorted([rs.simple(2), rs.simple(3), rs.simple(5), rs.simple(7),
                         rs.highest_root([2, 3, 4, 5]), rs.highest_root(range(2, 8)),
                         rs.highest_root(range(1, 8)), rs.highest_root()]))


def minimal_quadruple(rs: RootSystem) -> tuple:
    """s_8 image of {a7, th6, th7, th}."""
    _require(rs, "E8")
    s8 = rs.simple(8)
    base = [rs.simple(7), rs.highest_root(range(2, 8)), rs.highest_root(range(1, 8)), rs.highest_root()]
    return tuple(sorted(rs.reflect(s8, b) for b in base))


def minimal_triple(rs7: RootSystem) -> tuple:
    """{a7, th6, th7} in E7."""
    _require(rs7, "E7")
    return tuple(sorted([rs7.simple(7), rs7.highest_root(range(2, 8)), rs7.highest_root()]))


def e8_decompose(rs: RootSystem, R) -> tuple[tuple, tuple]:
    """Split an 8-root avoiding theta into the support of theta and the rest."""
    _require(rs, "E8")
    R = tuple(sorted(R))
    th = rs.highest_root()
    if th in R:
        raise ContainsTheta("the 8-root contains the highest root")
    q1 = support(rs, R, th)
    q0 = tuple(b for b in R if b not in q1)
    return q1, q0


def embed_e7(rs7: RootSystem, rs8: RootSystem, ids) -> tuple:
    return tuple(sorted(rs8.id_of(list(rs7.roots[a]) + [0]) for a in ids))


def restrict_e8(rs8: RootSystem, rs7: RootSystem, ids) -> tuple:
    out = []
    for a in ids:
        c = rs8.roots[a]
        if c[7] != 0:
            raise InvalidType(f"{rs8.label(a)} is not in the E7 subsystem")
        out.append(rs7.id_of(c[:7]))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _omega_prime_e8(rs8: RootSystem):
    return enumerate_omega(rs8, [a for a in build_U(rs8, "height:8:0") if rs8.roots[a, 6] == 1])


def iota(rs8: RootSystem, T) -> tuple:
    """``{s_8(b) : b in T} | {eta}`` for a triple ``T`` of ``U'`` given in E8 ids."""
    _require(rs8, "E8")
    T = tuple(sorted(T))
    om = _omega_prime_e8(rs8)
    if len(T) != 3 or T not in om._index:
        raise NotATriple(f"{[rs8.label(b) for b in T]} is not an element of Omega_U'")
    s8 = rs8.simple(8)
    return tuple(sorted([rs8.reflect(s8, b) for b in T] + [eta(rs8)]))


# a/b/c labels for U' through the epsilon realization of E7 inside R^8

# Dynkin relabelling: standard E7 node -> node of the chain 1-2-3-4-5-6 with 7 on 3
DIAGRAM_RELABEL = {1: 1, 3: 2, 4: 3, 5: 4, 6: 5, 7: 6, 2: 7}


def _alpha_prime() -> np.ndarray:
    A = np.zeros((8, 8), dtype=np.int64)  # row i = alpha'_i, rows 1..7 used
    for i in range(1, 7):
        A[i, i - 1], A[i, i] = 4, -4
    A[7] = (-2, -2, -2, 2, 2, 2, 2, -2)
    return A


_BASE = np.array((-1, -1, -1, -1, -1, -1, 3, 3), dtype=np.int64)


def f_image(d) -> np.ndarray:
    """Integer 8-vector for a root ``alpha_8 + sum d_i alpha_i`` of the 56-element universe."""
    A = _alpha_prime()
    out = _BASE.copy()
    for i, di in enumerate(d, start=1):
        out += int(di) * A[DIAGRAM_RELABEL[i]]
    return out


def _v(i, j) -> np.ndarray:
    v = -np.ones(8, dtype=np.int64)
    v[i - 1] += 4
    v[j - 1] += 4
    return v


def _match_pm_v(vec):
    for i, j in combinations(range(1, 9), 2):
        v = _v(i, j)
        if np.array_equal(vec, v):
            return "X", i, j
        if np.array_equal(vec, -v):
            return "Y", i, j
    return None


@lru_cache(maxsize=None)
def abc_labelling(rs7: RootSystem) -> dict:
    """Bijection from E7 ids of ``U'`` to labels ``a<i>``, ``b<i>``, ``c<ij>`` (i < j)."""
    _require(rs7, "E7")
    U = build_U(rs7, "odd:7")
    labels = {}
    for a in U:
        hit = _match_pm_v(f_image(rs7.roots[a]))
        if hit is None:
            raise LabellingFailure(f"f({rs7.label(a)}) is not of the form +-v_ij")
        kind, i, j = hit
        if kind == "X" and j == 7 and i <= 6:
            labels[a] = f"a{i}"
        elif kind == "X" and j == 8 and i <= 6:
            labels[a] = f"b{i}"
        elif kind == "Y" and j <= 6:
            labels[a] = f"c{i}{j}"
        else:
            raise LabellingFailure(f"f({rs7.label(a)}) = {kind}_{i}{j} lies outside the a/b/c range")
    if len(set(labels.values())) != 27:
        raise LabellingFailure("labels are not distinct")
    return labels


def abc_inverse(rs7: RootSystem) -> dict:
    return {v: k for k, v in abc_labelling(rs7).items()}


def canonical_label(text: str) -> str:
    """``c61`` -> ``c16``; a and b labels unchanged."""
    m = re.fullmatch(r"([abc])(\d)(\d)?", text.strip())
    if not m:
        raise ValueError(f"bad label {text!r}")
    kind, i, j = m.group(1), int(m.group(2)), m.group(3)
    if kind == "c":
        j = int(j)
        i, j = min(i, j), max(i, j)
        return f"c{i}{j}"
    return f"{kind}{i}"


def _parse(label):
    lab = canonical_label(label)
    return lab[0], tuple(int(ch) for ch in lab[1:])


def rothe45(triple) -> tuple[set, int]:
    """Closed-form residues (as labels) and level of a triple of ``U'`` in a/b/c form."""
    parts = sorted((_parse(t) for t in triple), key=lambda p: p[0])
    kinds = "".join(p[0] for p in parts)
    if kinds == "abc":
        (i,), (j,) = parts[0][1], parts[1][1]
        if tuple(sorted((i, j))) != parts[2][1] or i == j:
            raise NotATriple(f"{triple} is not of the form a_i c_ij b_j")
        res = {f"a{h}" for h in range(1, i)}
        if i < j:
            res |= {canonical_label(f"c{i}{k}") for k in range(j + 1, 7)}
            return res, 5 + i - j
        res |= {canonical_label(f"c{k}{i}") for k in range(j + 1, 7) if k != i}
        return res, 4 + i - j
    if kinds == "ccc":
        tau = [0] * 6
        for _, (p, q) in parts:
            tau[p - 1], tau[q - 1] = q, p
        if 0 in tau:
            raise NotATriple(f"{triple} is not a perfect matching")
        res = {f"a{h}" for h in range(1, 7)}
        res |= {f"c{p}{q}" for p in range(1, 7) for q in range(p + 1, 7) if tau[p - 1] < q and tau[q - 1] < p}
        return res, (len(inversions(tau)) + 9) // 2
    raise NotATriple(f"{triple} has the wrong shape")


def rothe45_crosscheck(rs7: RootSystem) -> int:
    """Compare the closed form with direct residues for all 45 triples; returns the count checked."""
    lab = abc_labelling(rs7)
    U = build_U(rs7, "odd:7")
    om = enumerate_omega(rs7, U)
    for T in om.members:
        direct = residues_wrt(rs7, U, T)
        got = {lab[g] for g in direct.residues}
        want, lvl = rothe45([lab[b] for b in T])
        if got != want or lvl != direct.level:
            raise CrossCheckMismatch(f"{sorted(lab[b] for b in T)}: direct {sorted(got)} vs closed {sorted(want)}",
                                     witness=T)
    return len(om)


def qhf_prime(rs7: RootSystem) -> HafnianPoly:
    U = build_U(rs7, "odd:7")
    om = enumerate_omega(rs7, U)
    return HafnianPoly.from_levels(om.members, compute_levels(rs7, om.universe, om.array))


def invariant_cubic(rs7: RootSystem | None = None) -> HafnianPoly:
    """Pfaffian of ``U'``: the 45 triples with coefficient (-1)^level."""
    rs7 = build_root_system("E7") if rs7 is None else rs7
    return qhf_prime(rs7).specialize("q=-1")


def cubic_text(rs7: RootSystem | None = None) -> str:
    """Cubic in a/b/c labels, one term per line, ordered by level then labels."""
    rs7 = build_root_system("E7") if rs7 is None else rs7
    lab = abc_labelling(rs7)
    lines = []
    for (m, e), c in qhf_prime(rs7).terms.items():
        factors = sorted(lab[b] for b in m)
        lines.append(((e, factors), f"{c * (-1) ** e:+d} {'*'.join(factors)}"))
    lines.sort()
    return "".join(line + "\n" for _, line in lines)


def sign_flip_violations(rs7: RootSystem) -> list:
    """Pairs (generator node, triple) where s moves T but the level parity does not change."""
    U = build_U(rs7, "odd:7")
    om = enumerate_omega(rs7, U)
    lv = compute_levels(rs7, om.universe, om.array)
    bad = []
    for node in range(1, 7):
        s = rs7.simple(node)
        for x, T in enumerate(om.members):
            y = om.index(standard_act(rs7, s, T))
            if y != x and (lv[x] - lv[y]) % 2 == 0:
                bad.append((node, T))
    return bad


def strongly_regular_parameters(adj) -> tuple | None:
    """``(n, k, lambda, mu)`` if the 0/1 adjacency matrix is strongly regular, else None."""
    A = np.asarray(adj, dtype=np.int64)
    n = len(A)
    deg = A.sum(axis=1)
    if len(set(deg.tolist())) != 1:
        return None
    common = A @ A
    off = ~np.eye(n, dtype=bool)
    lam = set(common[(A == 1) & off].tolist())
    mu = set(common[(A == 0) & off].tolist())
    if len(lam) > 1 or len(mu) > 1:
        return None
    return n, int(deg[0]), lam.pop() if lam else 0, mu.pop() if mu else 0


def disjointness_graph(members) -> np.ndarray:
    sets = [set(m) for m in members]
    n = len(sets)
    A = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x + 1, n):
            if not sets[x] & sets[y]:
                A[x, y] = A[y, x] = 1
    return A
