"""Sweep of the odd-coefficient triples in types E6, E7, E8."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor

from ..poly import QPoly, factor_quantum_integers
from ..qp import build_instance, verify_qp_triple
from ..rootsys import build_root_system
from .universes import triple_T, triple_Tprime


def evaluate_triple(type_name: str, p: int, variant: str = "T") -> dict:
    """Verify one triple and summarize it."""
    rs = build_root_system(type_name)
    I, U = triple_T(rs, p) if variant == "T" else triple_Tprime(rs, p)
    inst = build_instance(rs, I, U)
    v = verify_qp_triple(rs, I, U, inst)
    name = f"{variant}({rs.type},{p})"
    out = {"triple": name, "type": str(rs.type), "p": p, "U": len(inst.universe), "omega": len(inst),
           "kappa": inst.omega.kappa, "qp": v.ok, "transitive": v.transitive}
    if v.ok:
        out["degrees"] = factor_quantum_integers(QPoly.from_exponents(int(x) for x in inst.levels))
    else:
        out["failure"] = v.failure
        out["violations"] = {k: c for k, c in v.counts.items() if k.endswith("_violations") and c}
    return out


def _cell(args):
    return evaluate_triple(*args)


def table1(jobs: int = 1) -> dict:
    """Rows for every passing T(E_n, p) and an exclusion report for the others."""
    cells = [(f"E{n}", p) for n in (6, 7, 8) for p in range(1, n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_cell, cells))
    else:
        results = [_cell(c) for c in cells]
    rows = [{k: r[k] for k in ("triple", "U", "omega", "kappa", "degrees")} for r in results if r["qp"]]
    excluded = [{k: r[k] for k in ("triple", "U", "omega", "kappa", "failure", "violations")}
                for r in results if not r["qp"]]
    return {"rows": rows, "excluded": excluded}


def table1_json(jobs: int = 1) -> str:
    return json.dumps(table1(jobs), indent=1) + "\n"


def table1_text(data: dict) -> str:
    lines = [f"{'triple':<10} {'|U|':>4} {'|Omega|':>8} {'kappa':>6}  degrees"]
    for r in data["rows"]:
        lines.append(f"{r['triple']:<10} {r['U']:>4} {r['omega']:>8} {r['kappa']:>6}  "
                     + ", ".join(map(str, r["degrees"])))
    lines.append("")
    lines.append("excluded:")
    for r in data["excluded"]:
        lines.append(f"{r['triple']:<10} fails {r['failure']}")
    return "\n".join(lines) + "\n"
