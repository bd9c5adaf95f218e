"""Residues and levels.

A root ``g`` of a universe ``U`` is a residue of an orthogonal set ``R`` when
every reflection ``s_b`` (``b`` in ``R``) keeps ``g`` positive.  ``R`` need not
lie inside ``U``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidType
from .ortho import span_roots
from .rootsys import RootSystem


@dataclass(frozen=True)
class ResidueSet:
    universe: tuple
    kroot: tuple
    residues: tuple
    level: int


def _residue_mask(rs: RootSystem, U, R) -> np.ndarray:
    U = np.asarray(U, dtype=np.int64)
    if not len(R):
        return np.ones(len(U), dtype=bool)
    # positive ids are exactly those below npos
    return np.all(rs.refl[np.ix_(list(R), U)] < rs.npos, axis=0)


def residues_wrt(rs: RootSystem, U, R) -> ResidueSet:
    universe = tuple(sorted(int(a) for a in U))
    R = tuple(sorted(int(b) for b in R))
    mask = _residue_mask(rs, universe, R)
    res = tuple(int(g) for g in np.asarray(universe, dtype=np.int64)[mask])
    return ResidueSet(universe, R, res, len(res))


def internal_universe(rs: RootSystem, R) -> tuple:
    """Positive roots in the span of ``R``."""
    return tuple(sorted(a for a in span_roots(rs, R) if a < rs.npos))


def internal_residues(rs: RootSystem, R) -> ResidueSet:
    return residues_wrt(rs, internal_universe(rs, R), R)


def level(rs: RootSystem, U, R) -> int:
    return int(_residue_mask(rs, sorted(U), list(R)).sum())


def levels(rs: RootSystem, U, members) -> np.ndarray:
    """Levels of every row of ``members`` with respect to ``U``."""
    members = np.asarray(members, dtype=np.int32)
    if members.ndim != 2:
        members = members.reshape(len(members), -1)
    return _kernels.count_levels(members, rs.refl, rs.positive_mask, np.asarray(sorted(U), dtype=np.int32))


def residues_by_height(rs: RootSystem, H, i: int) -> set[int]:
    """Internal residues of ``H`` whose coefficient at node 8 equals ``i`` (E8 only)."""
    if str(rs.type) != "E8":
        raise InvalidType("height-graded residues are defined for E8")
    if i not in (0, 1, 2):
        raise ValueError("8-height must be 0, 1 or 2")
    res = internal_residues(rs, H).residues
    return {g for g in res if rs.roots[g, 7] == i}
