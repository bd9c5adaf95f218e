"""Move graphs on a universe and their kernels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..ortho import enumerate_omega
from ..residue import levels as compute_levels
from ..rootsys import RootSystem


@dataclass
class GameDag:
    vertices: tuple
    edges: list  # (u1, u2) root-id pairs, u2 - u1 a positive root of the parabolic subsystem
    kernels: list

    def successors(self) -> dict:
        out = {v: [] for v in self.vertices}
        for a, b in self.edges:
            out[a].append(b)
        return out

    def is_kernel(self, T) -> bool:
        """No edge inside T, and every vertex outside T has an edge into T."""
        T = set(T)
        succ = self.successors()
        if any(b in T for a in T for b in succ[a]):
            return False
        return all(any(b in T for b in succ[v]) for v in self.vertices if v not in T)

    def to_dot(self, label=str, name="game") -> str:
        kern = set(self.kernels[0]) if self.kernels else set()
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for v in self.vertices:
            style = ", style=filled" if v in kern else ""
            lines.append(f'  r{v} [label="{label(v)}"{style}];')
        for a, b in self.edges:
            lines.append(f"  r{a} -> r{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def game_dag(rs: RootSystem, I, U) -> GameDag:
    """Build the move graph and its kernel (unique, by backward induction from the sinks)."""
    U = tuple(sorted(U))
    I = set(I)
    off = [i - 1 for i in rs.nodes if i not in I]
    edges = []
    for a in U:
        for b in U:
            d = rs.roots[b] - rs.roots[a]
            if np.any(d < 0) or not np.any(d):
                continue
            if off and np.any(d[off] != 0):
                continue
            if tuple(int(x) for x in d) in rs.lookup:
                edges.append((a, b))
    dag = GameDag(U, edges, [])
    succ = dag.successors()
    # edges raise height, so deciding vertices from the top down is a topological sweep
    kernel = set()
    for v in sorted(U, key=lambda a: (-rs.height(a), a)):
        if not any(b in kernel for b in succ[v]):
            kernel.add(v)
    dag.kernels = [tuple(sorted(kernel))]
    return dag


def level_zero_members(rs: RootSystem, U) -> list[tuple]:
    om = enumerate_omega(rs, U)
    lv = compute_levels(rs, om.universe, om.array)
    return [m for m, r in zip(om.members, lv) if r == 0]


def brute_force_kernels(dag: GameDag) -> list[tuple]:
    """All kernels by exhaustive search over independent sets (small graphs only)."""
    verts = list(dag.vertices)
    succ = dag.successors()
    nbr = {v: set(succ[v]) for v in verts}
    for a, b in dag.edges:
        nbr[b].add(a)
    found = []

    def rec(i, chosen, banned):
        if i == len(verts):
            if dag.is_kernel(chosen):
                found.append(tuple(sorted(chosen)))
            return
        v = verts[i]
        if v not in banned:
            rec(i + 1, chosen | {v}, banned | nbr[v])
        rec(i + 1, chosen, banned)

    rec(0, frozenset(), frozenset())
    return found
