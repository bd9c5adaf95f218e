"""Orthogonal root subsets, residues, quantum Hafnians and quasiparabolic triples."""

from ._kernels import BACKEND
from .rootsys import DynkinType, RootSystem, build_root_system

__all__ = ["BACKEND", "DynkinType", "RootSystem", "build_root_system"]
__version__ = "0.1.0"
