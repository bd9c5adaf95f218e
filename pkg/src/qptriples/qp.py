"""Standard action on orthogonal sets and quasiparabolic verification.

Elements of Weyl groups are never built.  Generators and reflections act
through roots, and every action is precomputed as a permutation table on the
index set of Omega_U.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import Mismatch, NotQuasiparabolic
from .ortho import OmegaSet, enumerate_omega
from .residue import levels as compute_levels
from .rootsys import RootSystem

WITNESS_CAP = 10


def standard_act(rs: RootSystem, w: int, R) -> tuple:
    """``{|s_w(a)| : a in R}`` as a sorted tuple."""
    img = rs.refl[w, list(R)]
    return tuple(sorted(int(a) if a < rs.npos else int(a) - rs.npos for a in img))


def _image_rows(rs: RootSystem, ids) -> np.ndarray:
    """Row per root ``w``: absolute image id of every positive root under ``s_w``."""
    img = rs.refl[np.asarray(ids, dtype=np.int64)][:, : rs.npos].astype(np.int32)
    return np.where(img >= rs.npos, img - rs.npos, img).astype(np.int32)


@dataclass(eq=False)
class ScaledInstance:
    rs: RootSystem
    I: tuple
    omega: OmegaSet
    levels: np.ndarray
    generators: tuple
    reflections: tuple
    gen_perm: np.ndarray = field(repr=False)

    @property
    def universe(self):
        return self.omega.universe

    @property
    def members(self):
        return self.omega.members

    def __len__(self):
        return len(self.omega)

    @cached_property
    def refl_perm(self) -> np.ndarray:
        if not self.reflections:
            return np.zeros((0, len(self)), dtype=np.int32)
        return _kernels.act_table(_image_rows(self.rs, self.reflections), self.omega.array)

    @property
    def closed(self) -> bool:
        return bool(np.all(self.gen_perm >= 0))

    def orbits(self) -> list[list[int]]:
        """Orbits of the generator action (requires closure)."""
        parent = list(range(len(self)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for row in self.gen_perm:
            for x, y in enumerate(row):
                a, b = find(x), find(int(y))
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups = {}
        for x in range(len(self)):
            groups.setdefault(find(x), []).append(x)
        return sorted(groups.values())


def build_instance(rs: RootSystem, I, U, omega: OmegaSet | None = None) -> ScaledInstance:
    I = tuple(sorted(set(int(i) for i in I)))
    omega = enumerate_omega(rs, U) if omega is None else omega
    lv = compute_levels(rs, omega.universe, omega.array)
    gens = tuple(rs.simple(i) for i in I)
    refls = tuple(sorted(a for a in rs.parabolic_subroots(I) if a < rs.npos)) if I else ()
    gen_perm = (_kernels.act_table(_image_rows(rs, gens), omega.array) if gens
                else np.zeros((0, len(omega)), dtype=np.int32))
    return ScaledInstance(rs, I, omega, lv, gens, refls, gen_perm)


@dataclass
class QPVerdict:
    closed: bool
    is_scaled: bool
    qp1: bool
    qp2: bool
    transitive: bool
    orbits: int
    witnesses: list
    counts: dict

    @property
    def ok(self) -> bool:
        return self.closed and self.is_scaled and self.qp1 and self.qp2

    @property
    def failure(self) -> str | None:
        for name, flag in (("closure", self.closed), ("scaled", self.is_scaled), ("qp1", self.qp1), ("qp2", self.qp2)):
            if not flag:
                return name
        return None

    def to_dict(self) -> dict:
        return {"scaled": self.is_scaled, "qp1": self.qp1, "qp2": self.qp2, "transitive": self.transitive,
                "closed": self.closed, "orbits": self.orbits, "counts": self.counts, "witnesses": self.witnesses}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def _witness(inst, check, x, **ids):
    rs = inst.rs
    out = {"check": check, "element": int(x), "member": [rs.label(b) for b in inst.members[x]]}
    for k, v in ids.items():
        out[k] = rs.label(v) if k in ("generator", "reflection") else v
    return out


def verify_qp_triple(rs: RootSystem, I, U, inst: ScaledInstance | None = None) -> QPVerdict:
    """Full sweep of closure, the scaled condition, QP1, QP2 and transitivity."""
    inst = build_instance(rs, I, U) if inst is None else inst
    lam = inst.levels
    witnesses = []
    counts = {"elements": len(inst), "kappa": inst.omega.kappa, "generators": len(inst.generators),
              "reflections": len(inst.reflections)}

    bad = np.argwhere(inst.gen_perm < 0)
    counts["closure_violations"] = int(len(bad))
    if len(bad):
        for si, x in bad[:WITNESS_CAP]:
            witnesses.append(_witness(inst, "closure", x, generator=inst.generators[si]))
        return QPVerdict(False, False, False, False, False, 0, witnesses, counts)

    diff = lam[inst.gen_perm] - lam[None, :]
    bad = np.argwhere(np.abs(diff) > 1)
    counts["scaled_violations"] = int(len(bad))
    scaled = not len(bad)
    for si, x in bad[:WITNESS_CAP]:
        y = int(inst.gen_perm[si, x])
        witnesses.append(_witness(inst, "scaled", x, generator=inst.generators[si],
                                  levels=[int(lam[x]), int(lam[y])]))

    rp = inst.refl_perm
    idx = np.arange(len(inst))
    bad = np.argwhere((lam[rp] == lam[None, :]) & (rp != idx[None, :])) if len(rp) else np.zeros((0, 2), int)
    counts["qp1_violations"] = int(len(bad))
    qp1 = not len(bad)
    for ri, x in bad[:WITNESS_CAP]:
        witnesses.append(_witness(inst, "qp1", x, reflection=inst.reflections[ri], image=int(rp[ri, x]),
                                  levels=[int(lam[x])]))

    if len(rp) and len(inst.gen_perm):
        n2, found = _kernels.qp2_violations(lam, rp, inst.gen_perm, WITNESS_CAP)
    else:
        n2, found = 0, []
    counts["qp2_violations"] = int(n2)
    qp2 = n2 == 0
    for ri, x, si in found:
        rx = int(rp[ri, x])
        witnesses.append(_witness(inst, "qp2", x, reflection=inst.reflections[ri], generator=inst.generators[si],
                                  levels=[int(lam[x]), int(lam[rx]), int(lam[inst.gen_perm[si, x]]),
                                          int(lam[inst.gen_perm[si, rx]])]))

    orbits = inst.orbits()
    witnesses.sort(key=lambda w: (w["check"], json.dumps(w, sort_keys=True)))
    return QPVerdict(True, scaled, qp1, qp2, len(orbits) == 1, len(orbits), witnesses, counts)


def extremal_elements(inst: ScaledInstance) -> tuple[list[int], list[int]]:
    lam = inst.levels
    if len(inst.gen_perm) == 0:
        allx = list(range(len(inst)))
        return allx, allx
    moved = lam[inst.gen_perm]
    minimal = np.flatnonzero(np.all(moved >= lam[None, :], axis=0))
    maximal = np.flatnonzero(np.all(moved <= lam[None, :], axis=0))
    return [int(x) for x in minimal], [int(x) for x in maximal]


@dataclass
class QPOrder:
    elements: list
    ranks: list
    covers: list  # (lower, upper) index pairs, sorted

    def up(self, x) -> list[int]:
        return [b for a, b in self.covers if a == x]

    def leq(self, x, y) -> bool:
        if x == y:
            return True
        if not hasattr(self, "_reach"):
            self._reach = _reach_from_covers(len(self.elements), self.covers, self.ranks)
        return bool(self._reach[x] >> y & 1)

    def to_dot(self, label=str, name="qp_order") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for x, m in enumerate(self.elements):
            lines.append(f'  n{x} [label="{label(m)}"];')
        by_rank = {}
        for x, r in enumerate(self.ranks):
            by_rank.setdefault(r, []).append(x)
        for r in sorted(by_rank):
            lines.append("  { rank=same; " + " ".join(f"n{x};" for x in by_rank[r]) + " }")
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _reach_from_covers(n, edges, ranks):
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    reach = [0] * n
    for x in sorted(range(n), key=lambda v: -ranks[v]):
        acc = 0
        for y in succ[x]:
            acc |= reach[y] | (1 << y)
        reach[x] = acc
    return reach


def qp_order(inst: ScaledInstance, verdict: QPVerdict | None = None) -> QPOrder:
    """Hasse diagram of the order generated by ``x < rx`` when the level goes up."""
    verdict = verify_qp_triple(inst.rs, inst.I, inst.universe, inst) if verdict is None else verdict
    if not verdict.ok:
        raise NotQuasiparabolic(f"instance fails the {verdict.failure} check")
    lam = inst.levels
    n = len(inst)
    succ = [set() for _ in range(n)]
    rp = inst.refl_perm
    for row in rp:
        up = np.flatnonzero(lam[row] > lam)
        for x in up:
            succ[int(x)].add(int(row[x]))
    ranks = [int(v) for v in lam - lam.min()] if n else []
    reach = _reach_from_covers(n, [(a, b) for a in range(n) for b in succ[a]], ranks)
    covers = []
    for x in range(n):
        for y in succ[x]:
            if not any(reach[z] >> y & 1 for z in succ[x] if z != y):
                covers.append((x, y))
    covers.sort()
    return QPOrder(list(inst.members), ranks, covers)


def rank_consistency(inst: ScaledInstance) -> dict:
    """Check that generator distance from the unique minimal element equals the level gap."""
    minimal, _ = extremal_elements(inst)
    if len(minimal) != 1:
        raise Mismatch(f"expected one minimal element, found {len(minimal)}", witness=minimal)
    x0 = minimal[0]
    dist = [-1] * len(inst)
    dist[x0] = 0
    queue = deque([x0])
    while queue:
        x = queue.popleft()
        for row in inst.gen_perm:
            y = int(row[x])
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    lam = inst.levels
    for x, d in enumerate(dist):
        if d != lam[x] - lam[x0]:
            raise Mismatch(f"element {x}: distance {d}, level gap {int(lam[x] - lam[x0])}", witness=x)
    return {"ok": True, "minimal": x0, "max_distance": max(dist)}
