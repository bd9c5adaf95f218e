"""Command line front end (``roots``).

Exit codes: 0 success, 1 a verification came out false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import Mismatch, RootsError
from .ortho import enumerate_omega
from .poly import HafnianPoly, QPoly, factor_quantum_integers, matrix_oracle_compare
from .qp import build_instance, qp_order, rank_consistency, verify_qp_triple
from .residue import internal_residues, levels as compute_levels, residues_wrt
from .rootsys import RootSystem, build_root_system


class UsageError(Exception):
    pass


# argument helpers

def _nodes(rs: RootSystem, text: str) -> tuple:
    text = text.strip()
    if text == "all":
        return tuple(rs.nodes)
    if text.startswith("all-but:"):
        drop = {int(x) for x in text[len("all-but:"):].split(",") if x}
        return tuple(i for i in rs.nodes if i not in drop)
    if text in ("", "none"):
        return ()
    return tuple(sorted(int(x) for x in text.split(",")))


def _setup(args):
    """Root system, generator nodes and universe from the common flags."""
    from .catalog.universes import build_U, triple_T, triple_Tprime

    rs = build_root_system(args.type)
    triple = getattr(args, "triple", None)
    if triple:
        kind, _, p = triple.partition(":")
        if kind not in ("T", "Tp") or not p.isdigit():
            raise UsageError("--triple takes T:<p> or Tp:<p>")
        I, U = (triple_T if kind == "T" else triple_Tprime)(rs, int(p))
        return rs, I, U
    U = build_U(rs, args.universe)
    I = _nodes(rs, getattr(args, "I", None) or "all")
    return rs, I, U


def _labeller(rs: RootSystem, display: str):
    if display == "coeffs":
        return rs.label
    if display == "epsilon":
        if rs.type.family in ("A", "D"):
            from .catalog.universes import epsilon_label

            return lambda a: epsilon_label(rs, a)
        if str(rs.type) == "E7":
            from .catalog.universes import build_U
            from .catalog.e8 import f_image

            inside = set(build_U(rs, "odd:7"))

            def lab(a):
                if a not in inside:
                    raise UsageError("the E7 epsilon realization covers the 27 roots odd at node 7")
                return "(" + ",".join(str(int(x)) for x in f_image(rs.roots[a])) + ")"

            return lab
        raise UsageError("--display epsilon is available for types A, D and E7")
    if display == "abc":
        if str(rs.type) != "E7":
            raise UsageError("--display abc applies to E7")
        from .catalog.e8 import abc_labelling

        table = abc_labelling(rs)

        def lab(a):
            if a not in table:
                raise UsageError(f"{rs.label(a)} has no a/b/c label")
            return table[a]

        return lab
    raise UsageError(f"unknown display {display!r}")


def _parse_roots(rs: RootSystem, text: str, display: str) -> tuple:
    items = [t for t in text.replace(";", ",").split(",") if t.strip()] if "," in text or ";" in text else text.split()
    if display == "abc":
        from .catalog.e8 import abc_inverse, canonical_label

        inv = abc_inverse(rs)
        return tuple(sorted(inv[canonical_label(t)] for t in items))
    return tuple(sorted(rs.parse_root(t) for t in items))


def _couple_monomial(rs: RootSystem, m) -> str:
    """Type D shorthand: u<ij> for a couple e_i +- e_j; other roots in epsilon form."""
    from .catalog.universes import epsilon_label, epsilon_vectors

    vecs = epsilon_vectors(rs)
    plus, minus, rest = {}, {}, []
    for b in m:
        v = vecs[b]
        nz = [int(i) + 1 for i in v.nonzero()[0]]
        if len(nz) == 2 and v[nz[0] - 1] == 1:
            (plus if v[nz[1] - 1] == 1 else minus)[tuple(nz)] = b
        else:
            rest.append(b)
    parts = []
    for key in sorted(set(plus) | set(minus)):
        if key in plus and key in minus:
            parts.append(f"u{key[0]}{key[1]}")
        else:
            parts.append(epsilon_label(rs, plus.get(key, minus.get(key))))
    parts += [epsilon_label(rs, b) for b in rest]
    return "*".join(parts)


def _poly_text(rs, h: HafnianPoly, display: str) -> str:
    if display == "epsilon" and rs.type.family == "D":
        rows = sorted(((e, _couple_monomial(rs, m)), c) for (m, e), c in h.terms.items())
        return "".join(f"{c:+d} q^{e} {mono}\n" for (e, mono), c in rows)
    return h.to_text(_labeller(rs, display))


# subcommands

def cmd_gen(args, out):
    rs = build_root_system(args.type)
    lab = _labeller(rs, args.display)
    if args.format == "json":
        roots = [{"id": a, "coeffs": list(rs.coeffs(a)), "height": rs.height(a), "positive": rs.is_positive(a)}
                 for a in range(rs.nroots)]
        out.write(json.dumps({"type": str(rs.type), "count": rs.nroots, "positive": rs.npos, "roots": roots},
                             indent=1) + "\n")
        return 0
    out.write(f"{rs.type}: {rs.nroots} roots, {rs.npos} positive\n")
    for a in range(rs.nroots):
        text = lab(a) if rs.is_positive(a) or args.display == "coeffs" else "-" + lab(rs.neg(a))
        out.write(f"{a:>4} {text:>24} ht={rs.height(a)}\n")
    return 0


def cmd_omega(args, out):
    rs, _, U = _setup(args)
    om = enumerate_omega(rs, U)
    lv = compute_levels(rs, om.universe, om.array)
    if args.format == "json":
        out.write(json.dumps({"universe": list(om.universe), "kappa": om.kappa,
                              "members": [list(m) for m in om.members], "levels": [int(x) for x in lv]}) + "\n")
        return 0
    lab = _labeller(rs, args.display)
    out.write(f"|U| = {len(om.universe)}, kappa = {om.kappa}, |Omega| = {len(om)}\n")
    for m, r in zip(om.members, lv):
        out.write(f"{int(r):>3}  " + " ".join(lab(b) for b in m) + "\n")
    return 0


def cmd_residues(args, out):
    rs, _, U = _setup(args)
    R = _parse_roots(rs, args.kroot, args.display)
    res = internal_residues(rs, R) if args.internal else residues_wrt(rs, U, R)
    lab = _labeller(rs, args.display)
    if args.format == "json":
        out.write(json.dumps({"kroot": [lab(b) for b in res.kroot], "residues": [lab(g) for g in res.residues],
                              "level": res.level}) + "\n")
        return 0
    out.write(f"level {res.level}\n")
    for g in res.residues:
        out.write(lab(g) + "\n")
    return 0


def _hafnian(args):
    from .poly import quantum_hafnian

    rs, _, U = _setup(args)
    return rs, quantum_hafnian(rs, U)


def cmd_hafnian(args, out):
    rs, h = _hafnian(args)
    if args.specialize:
        mode = args.specialize
        if mode not in ("negate-q", "q=1", "q=-1"):
            try:
                mode = int(mode.removeprefix("q="))
            except ValueError:
                raise UsageError(f"bad specialization {args.specialize!r}") from None
        h = h.specialize(mode)
    if args.format == "json":
        out.write(h.to_json(_labeller(rs, args.display)) + "\n")
    else:
        out.write(_poly_text(rs, h, args.display))
    return 0


def cmd_poincare(args, out):
    rs, h = _hafnian(args)
    p = h.poincare()
    if args.format == "json":
        out.write(json.dumps({"coeffs": list(p.coeffs), "value_at_1": p(1)}) + "\n")
    else:
        out.write(str(p) + "\n")
    return 0


def cmd_degrees(args, out):
    rs, h = _hafnian(args)
    d = factor_quantum_integers(h.poincare())
    if args.format == "json":
        out.write(json.dumps({"degrees": d}) + "\n")
    else:
        out.write(("no factorization" if d is None else " ".join(map(str, d))) + "\n")
    return 0 if d is not None else 1


def cmd_verify(args, out):
    rs, I, U = _setup(args)
    v = verify_qp_triple(rs, I, U)
    if args.format == "json":
        out.write(v.to_json() + "\n")
    else:
        out.write(f"closed={v.closed} scaled={v.is_scaled} qp1={v.qp1} qp2={v.qp2} "
                  f"transitive={v.transitive} orbits={v.orbits} elements={v.counts['elements']}\n")
        out.write(("QP-triple" if v.ok else f"not a QP-triple (fails {v.failure})") + "\n")
        for w in v.witnesses:
            out.write("  " + json.dumps(w, sort_keys=True) + "\n")
    return 0 if v.ok else 1


def cmd_order(args, out):
    rs, I, U = _setup(args)
    inst = build_instance(rs, I, U)
    v = verify_qp_triple(rs, I, U, inst)
    if not v.ok:
        out.write(f"not a QP-triple (fails {v.failure})\n")
        return 1
    order = qp_order(inst, v)
    lab = _labeller(rs, args.display)
    if args.format == "json":
        out.write(json.dumps({"elements": [list(m) for m in order.elements], "ranks": order.ranks,
                              "covers": [list(c) for c in order.covers]}) + "\n")
    elif args.format == "dot":
        out.write(order.to_dot(lambda m: " ".join(lab(b) for b in m)))
    else:
        rc = rank_consistency(inst) if v.transitive else None
        out.write(f"elements {len(order.elements)}, covers {len(order.covers)}, max rank {max(order.ranks)}\n")
        if rc:
            out.write(f"rank consistency ok, minimal element {rc['minimal']}, max distance {rc['max_distance']}\n")
    return 0


def cmd_table1(args, out):
    from .catalog.table1 import table1, table1_text

    data = table1(args.jobs)
    out.write(json.dumps(data, indent=1) + "\n" if args.format == "json" else table1_text(data))
    return 0


def cmd_cubic(args, out):
    from .catalog.e8 import abc_labelling, cubic_text, invariant_cubic

    rs7 = build_root_system("E7")
    if args.format == "json":
        out.write(invariant_cubic(rs7).to_json(abc_labelling(rs7).__getitem__) + "\n")
    else:
        out.write(cubic_text(rs7))
    return 0


def cmd_gamedag(args, out):
    from .catalog.gamedag import game_dag, level_zero_members

    rs, I, U = _setup(args)
    dag = game_dag(rs, I, U)
    lab = _labeller(rs, args.display)
    zero = level_zero_members(rs, U)
    agree = dag.kernels == zero and all(dag.is_kernel(k) for k in dag.kernels)
    if args.format == "dot":
        out.write(dag.to_dot(lab))
    elif args.format == "json":
        out.write(json.dumps({"vertices": list(dag.vertices), "edges": [list(e) for e in dag.edges],
                              "kernels": [list(k) for k in dag.kernels],
                              "level_zero": [list(k) for k in zero], "agree": agree}) + "\n")
    else:
        out.write(f"vertices {len(dag.vertices)}, edges {len(dag.edges)}\n")
        for k in dag.kernels:
            out.write("kernel: " + " ".join(lab(b) for b in k) + "\n")
        out.write(f"kernel equals the level-0 elements: {agree}\n")
    return 0 if agree else 1


def cmd_oracle(args, out):
    from .catalog import models
    from .poly import quantum_hafnian

    k = args.k
    rs = build_root_system(f"D{2 * k}")
    if args.model == "matching":
        pos = models.matching_positions(rs)
    else:
        pos = models.perm_positions(rs)
    h = quantum_hafnian(rs, tuple(pos))
    try:
        res = matrix_oracle_compare(h, args.model, k, pos, trials=args.trials, seed=args.seed)
    except Mismatch as e:
        out.write(f"mismatch: {e}\n")
        return 1
    out.write(json.dumps(res) + "\n" if args.format == "json" else
              f"{args.model} k={k}: {res['checks']} checks over {res['trials']} random substitutions agree\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="roots", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_, universe=True, triple=True, fmt=("text", "json")):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--display", choices=("coeffs", "epsilon", "abc"), default="coeffs")
        p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        if universe:
            p.add_argument("--type", required=True, help="Dynkin type such as D4 or E8")
            p.add_argument("--universe", default="all", help="all | odd:p | oddpair:p | height:i:j")
        if triple:
            p.add_argument("--I", default="all", help="generator nodes: all | all-but:p,q | comma list")
            p.add_argument("--triple", help="T:<p> or Tp:<p>; overrides --universe and --I")
        return p

    p = sub.add_parser("gen", help="list the roots of a type")
    p.set_defaults(func=cmd_gen)
    p.add_argument("--type", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--display", choices=("coeffs", "epsilon", "abc"), default="coeffs")

    add("omega", cmd_omega, "maximum orthogonal subsets of a universe")
    p = add("residues", cmd_residues, "residues of an orthogonal set")
    p.add_argument("--kroot", required=True, help="roots separated by commas (coefficient strings, a<i>, or a/b/c labels)")
    p.add_argument("--internal", action="store_true", help="use the positive roots in the span as universe")
    p = add("hafnian", cmd_hafnian, "quantum Hafnian of a universe")
    p.add_argument("--specialize", help="negate-q | q=1 | q=-1 | q=<int>")
    add("poincare", cmd_poincare, "Poincare polynomial of a universe")
    add("degrees", cmd_degrees, "factor the Poincare polynomial into quantum integers")
    add("verify-qp", cmd_verify, "verify a quasiparabolic triple")
    add("order", cmd_order, "quasiparabolic order (Hasse diagram)", fmt=("dot", "text", "json"))
    add("table1", cmd_table1, "odd-coefficient triples in types E6, E7, E8", universe=False, triple=False)
    add("cubic", cmd_cubic, "Pfaffian of the 27-root triple in a/b/c labels", universe=False, triple=False)
    add("gamedag", cmd_gamedag, "move graph of a triple and its kernel", fmt=("text", "dot", "json"))
    p = add("oracle", cmd_oracle, "compare Hf/Pf with matrix formulas", universe=False, triple=False)
    p.add_argument("--model", choices=("matching", "permutation"), required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, RootsError, ValueError, KeyError) as e:
        sys.stderr.write(f"roots: error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
