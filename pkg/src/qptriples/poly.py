"""Quantum Hafnians, Poincare polynomials and quantum-integer factorization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from math import prod

import numpy as np

from .errors import Mismatch
from .ortho import enumerate_omega
from .residue import levels as compute_levels
from .rootsys import RootSystem


@dataclass(frozen=True)
class QPoly:
    """Integer polynomial in q, dense coefficients from the constant term up."""

    coeffs: tuple

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_exponents(cls, exps) -> "QPoly":
        exps = list(exps)
        c = [0] * (max(exps) + 1 if exps else 0)
        for e in exps:
            c[e] += 1
        return cls(tuple(c))

    @classmethod
    def qint(cls, d: int) -> "QPoly":
        return cls((1,) * d)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: "QPoly") -> "QPoly":
        if not self.coeffs or not other.coeffs:
            return QPoly(())
        return QPoly(tuple(int(x) for x in np.convolve(
            np.array(self.coeffs, dtype=object), np.array(other.coeffs, dtype=object))))

    def __call__(self, q):
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    def divmod_monic(self, d: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Exact long division by a monic divisor."""
        rem = list(self.coeffs)
        if len(rem) < len(d.coeffs):
            return QPoly(()), self
        quo = [0] * (len(rem) - len(d.coeffs) + 1)
        for i in range(len(quo) - 1, -1, -1):
            c = rem[i + len(d.coeffs) - 1]
            quo[i] = c
            if c:
                for j, dc in enumerate(d.coeffs):
                    rem[i + j] -= c * dc
        return QPoly(tuple(quo)), QPoly(tuple(rem))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            coef = str(abs(c)) if (abs(c) != 1 or i == 0) else ""
            parts.append(("-" if c < 0 else "+", coef + mon))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


def factor_quantum_integers(p: QPoly):
    """Degrees ``D`` (ascending) with ``p = prod [d]_q``, or None when no such multiset exists.

    Constant 1 factors as the empty multiset.
    """
    c = p.coeffs
    if not c or c[0] != 1 or any(x < 0 for x in c):
        return None

    def rec(cur: QPoly, top: int):
        if cur.coeffs == (1,):
            return []
        for d in range(min(cur.degree + 1, top), 1, -1):
            quo, rem = cur.divmod_monic(QPoly.qint(d))
            if rem.coeffs or any(x < 0 for x in quo.coeffs):
                continue
            rest = rec(quo, d)
            if rest is not None:
                return rest + [d]
        return None

    out = rec(p, p.degree + 1)
    return None if out is None else sorted(out)


@dataclass(frozen=True)
class HafnianPoly:
    """Sum of ``coeff * q^qpow * prod(x_b for b in monomial)``; keys are ``(monomial, qpow)``."""

    terms: dict

    @classmethod
    def from_levels(cls, members, lv) -> "HafnianPoly":
        terms = {}
        for m, r in zip(members, lv):
            key = (tuple(sorted(int(b) for b in m)), int(r))
            terms[key] = terms.get(key, 0) + 1
        return cls(terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def specialize(self, mode) -> "HafnianPoly":
        """``"negate-q"``, ``"q=1"``, ``"q=-1"`` or an integer value for q."""
        if mode == "negate-q":
            return HafnianPoly({k: c * (-1) ** k[1] for k, c in self.terms.items()})
        if mode == "q=1":
            value = 1
        elif mode == "q=-1":
            value = -1
        elif isinstance(mode, (int, np.integer)):
            value = int(mode)
        else:
            raise ValueError(f"unknown specialization {mode!r}")
        out = {}
        for (m, e), c in self.terms.items():
            out[(m, 0)] = out.get((m, 0), 0) + c * value**e
        return HafnianPoly({k: c for k, c in out.items() if c})

    def coefficient(self, monomial, qpow=None) -> int:
        m = tuple(sorted(monomial))
        if qpow is not None:
            return self.terms.get((m, qpow), 0)
        return sum(c for (mm, _), c in self.terms.items() if mm == m)

    def poincare(self) -> QPoly:
        c = {}
        for (_, e), v in self.terms.items():
            c[e] = c.get(e, 0) + v
        top = max(c, default=-1)
        return QPoly(tuple(c.get(i, 0) for i in range(top + 1)))

    def evaluate(self, x, q=1) -> int:
        """Value at ``x_b = x[b]`` (a mapping) and the given q."""
        return sum(c * q**e * prod(x[b] for b in m) for (m, e), c in self.terms.items())

    def to_text(self, label=str, key=None) -> str:
        """One term per line: ``<coeff> q^<e> <factor>*<factor>...``, sorted by q then monomial."""
        rows = []
        for (m, e), c in self.terms.items():
            factors = sorted(label(b) for b in m)
            rows.append(((e, factors) if key is None else key(m, e, factors), f"{c:+d} q^{e} {'*'.join(factors)}"))
        rows.sort(key=lambda r: r[0])
        return "".join(line + "\n" for _, line in rows)

    def to_json(self, label=str) -> str:
        out = [{"q": e, "monomial": [label(b) for b in m], "coeff": c} for (m, e), c in self.sorted_terms()]
        return json.dumps(out, indent=1)

    @classmethod
    def from_json(cls, text: str, parse=int) -> "HafnianPoly":
        terms = {}
        for t in json.loads(text):
            key = (tuple(sorted(parse(b) for b in t["monomial"])), int(t["q"]))
            terms[key] = terms.get(key, 0) + int(t["coeff"])
        return cls(terms)


def quantum_hafnian(rs: RootSystem, U) -> HafnianPoly:
    om = enumerate_omega(rs, U)
    return HafnianPoly.from_levels(om.members, compute_levels(rs, om.universe, om.array))


def poincare(rs: RootSystem, U) -> QPoly:
    om = enumerate_omega(rs, U)
    return QPoly.from_exponents(int(x) for x in compute_levels(rs, om.universe, om.array))


# naive matrix oracles; deliberately formula-level so they share nothing with the root code

def _perm_sign(p) -> int:
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inv % 2 else 1


def leibniz_det(A) -> int:
    n = len(A)
    return sum(_perm_sign(p) * prod(int(A[i][p[i]]) for i in range(n)) for p in permutations(range(n)))


def permanent(A) -> int:
    n = len(A)
    return sum(prod(int(A[i][p[i]]) for i in range(n)) for p in permutations(range(n)))


def matrix_hafnian(A, idx=None) -> int:
    idx = list(range(len(A))) if idx is None else idx
    if not idx:
        return 1
    i, rest = idx[0], idx[1:]
    return sum(int(A[i][j]) * matrix_hafnian(A, rest[:t] + rest[t + 1:]) for t, j in enumerate(rest))


def matrix_pfaffian(A, idx=None) -> int:
    idx = list(range(len(A))) if idx is None else idx
    if not idx:
        return 1
    i, rest = idx[0], idx[1:]
    return sum((-1) ** t * int(A[i][j]) * matrix_pfaffian(A, rest[:t] + rest[t + 1:]) for t, j in enumerate(rest))


def matrix_oracle_compare(h: HafnianPoly, model: str, k: int, positions: dict, trials=20, seed=0, lo=-5, hi=5):
    """Compare Hf/Pf of ``h`` with matrix oracles under random integer substitutions.

    ``positions`` maps each root id to its 1-based matrix cell ``(i, j)``.  The
    matching model uses a ``2k x 2k`` symmetric / skew-symmetric matrix, the
    permutation model a ``k x k`` matrix.  Returns a summary dict; raises
    Mismatch on the first disagreement.
    """
    rng = np.random.default_rng(seed)
    hf, pf = h.specialize("q=1"), h.specialize("q=-1")
    roots = sorted(positions)
    checks = 0
    for t in range(trials + 1):
        vals = np.zeros(len(roots), dtype=np.int64) if t == 0 else rng.integers(lo, hi + 1, len(roots))
        x = {b: int(v) for b, v in zip(roots, vals)}
        if model == "matching":
            S = [[0] * (2 * k) for _ in range(2 * k)]
            K = [[0] * (2 * k) for _ in range(2 * k)]
            for b, (i, j) in positions.items():
                S[i - 1][j - 1] = S[j - 1][i - 1] = x[b]
                K[i - 1][j - 1], K[j - 1][i - 1] = x[b], -x[b]
            pairs = [("Hf", hf.evaluate(x), matrix_hafnian(S)),
                     ("Pf", pf.evaluate(x), matrix_pfaffian(K)),
                     ("Pf^2", pf.evaluate(x) ** 2, leibniz_det(K))]
        elif model == "permutation":
            A = [[0] * k for _ in range(k)]
            for b, (i, j) in positions.items():
                A[i - 1][j - 1] = x[b]
            pairs = [("Hf", hf.evaluate(x), permanent(A)), ("Pf", pf.evaluate(x), leibniz_det(A))]
        else:
            raise ValueError(f"unknown model {model!r}")
        for name, got, want in pairs:
            checks += 1
            if got != want:
                raise Mismatch(f"{name}: polynomial {got} != matrix {want}", witness=x)
    return {"model": model, "k": k, "trials": trials, "checks": checks, "ok": True}
