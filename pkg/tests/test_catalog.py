import json
import random
from itertools import combinations
from math import comb

import numpy as np
import pytest

from qptriples import build_root_system
from qptriples.catalog import build_U, game_dag, triple_T, triple_Tprime
from qptriples.catalog import e8
from qptriples.catalog.gamedag import brute_force_kernels, level_zero_members
from qptriples.catalog.models import (
    Matching,
    all_matchings,
    all_permutations,
    couple_completion,
    inverse,
    length,
    matching_diagram,
    matching_stats,
    matching_to_kroot,
    perm_diagram,
    perm_residues_formula,
    perm_to_kroot,
)
from qptriples.catalog.table1 import evaluate_triple, table1, table1_json
from qptriples.catalog.universes import eps_root, epsilon_label
from qptriples.errors import ContainsTheta, InvalidNode, InvalidType, NotATriple
from qptriples.ortho import d_sets, enumerate_omega, is_coplanar
from qptriples.poly import factor_quantum_integers, poincare, quantum_hafnian
from qptriples.qp import build_instance, extremal_elements, standard_act, verify_qp_triple
from qptriples.residue import internal_residues, level, residues_wrt

TABLE1 = [
    ("T(E6,1)", 16, 40, 2, [5, 8]),
    ("T(E6,2)", 20, 30, 4, [2, 3, 5]),
    ("T(E6,6)", 16, 40, 2, [5, 8]),
    ("T(E7,1)", 32, 120, 4, [3, 5, 8]),
    ("T(E7,2)", 35, 30, 7, [2, 3, 5]),
    ("T(E7,5)", 35, 30, 7, [2, 3, 5]),
    ("T(E7,7)", 27, 45, 3, [5, 9]),
    ("T(E8,1)", 64, 240, 8, [2, 3, 5, 8]),
    ("T(E8,2)", 64, 240, 8, [2, 3, 5, 8]),
    ("T(E8,5)", 64, 240, 8, [2, 3, 5, 8]),
    ("T(E8,6)", 64, 240, 8, [2, 3, 5, 8]),
    ("T(E8,8)", 56, 630, 4, [5, 9, 14]),
]

# QHf of the 27 roots odd at node 7 of E7, as (level, factors)
QHF_ABC = [
    (0, "a1 c16 b6"), (1, "a2 c26 b6"), (1, "a1 c15 b5"), (2, "a2 c25 b5"), (2, "a3 c36 b6"),
    (2, "a1 c14 b4"), (3, "a2 c24 b4"), (3, "a3 c35 b5"), (3, "a4 c46 b6"), (3, "a1 c13 b3"),
    (4, "a2 c23 b3"), (4, "a3 c34 b4"), (4, "a4 c45 b5"), (4, "a5 c56 b6"), (4, "a1 c12 b2"),
    (5, "b1 c12 a2"), (5, "b2 c23 a3"), (5, "b3 c34 a4"), (5, "b4 c45 a5"), (5, "b5 c56 a6"),
    (6, "b1 c13 a3"), (6, "b2 c24 a4"), (6, "c12 c34 c56"), (6, "b3 c35 a5"), (6, "b4 c46 a6"),
    (7, "b1 c14 a4"), (7, "c13 c24 c56"), (7, "b2 c25 a5"), (7, "c12 c35 c46"), (7, "b3 c36 a6"),
    (8, "b1 c15 a5"), (8, "c14 c23 c56"), (8, "c13 c25 c46"), (8, "b2 c26 a6"), (8, "c12 c36 c45"),
    (9, "b1 c16 a6"), (9, "c15 c23 c46"), (9, "c14 c25 c36"), (9, "c13 c26 c45"), (10, "c16 c23 c45"),
    (10, "c15 c24 c36"), (10, "c14 c26 c35"), (11, "c16 c24 c35"), (11, "c15 c26 c34"), (12, "c16 c25 c34"),
]

# QHf of the roots e_i + e_j in D6, u_ij = e_i + e_j
QHF_D6 = [
    (0, "u12 u34 u56"), (1, "u13 u24 u56"), (1, "u12 u35 u46"), (2, "u13 u25 u46"), (2, "u14 u23 u56"),
    (2, "u12 u36 u45"), (3, "u14 u25 u36"), (3, "u15 u23 u46"), (3, "u13 u45 u26"), (4, "u16 u23 u45"),
    (4, "u15 u24 u36"), (4, "u14 u35 u26"), (5, "u15 u26 u34"), (5, "u16 u24 u35"), (6, "u16 u25 u34"),
]


def term_set(listing):
    return {(e, frozenset(t.split())) for e, t in listing}


# universes

def test_universe_sizes(E8):
    assert len(build_U(E8, "odd:8")) == 56
    assert build_U(E8, "all") == tuple(range(120))
    assert len(build_U(E8, "height:8:2")) == 1
    with pytest.raises(InvalidNode):
        build_U(E8, "odd:9")
    with pytest.raises(ValueError):
        build_U(E8, "even:2")


@pytest.mark.parametrize("k", [2, 3, 4])
def test_model_universes(k):
    n = 2 * k
    rs = build_root_system(f"D{n}")
    U = build_U(rs, f"odd:{n}")
    assert set(U) == {eps_root(rs, i, j) for i, j in combinations(range(1, n + 1), 2)}
    assert len(U) == comb(n, 2)
    _, V = triple_Tprime(rs, k)
    assert set(V) == {eps_root(rs, i, j + k) for i in range(1, k + 1) for j in range(1, k + 1)}


def test_epsilon_labels(D4):
    assert epsilon_label(D4, D4.simple(4)) == "e3+e4"
    assert epsilon_label(D4, D4.highest_root()) == "e1+e2"
    with pytest.raises(InvalidType):
        triple_Tprime(build_root_system("E6"), 1)


# matching model

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_psi_bijection_for_all_matchings(k):
    ms = all_matchings(2 * k)
    assert len(ms) == [1, 3, 15, 105][k - 1]
    for M in ms:
        st = matching_stats(M)
        assert len(st["inversions"]) == len(st["diagram"])
        assert sorted(st["psi"].values()) == sorted(st["diagram"])


def test_matching_small_cases():
    assert matching_stats(Matching(((1, 2), (3, 4))))["diagram"] == []
    assert len(matching_stats(Matching(((1, 4), (2, 3))))["inversions"]) == 2
    assert len(matching_stats(Matching(((1, 3), (2, 4))))["inversions"]) == 1
    with pytest.raises(ValueError):
        Matching(((1, 2), (2, 3)))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_matching_levels(k):
    rs = build_root_system(f"D{2 * k}")
    U = build_U(rs, f"odd:{2 * k}")
    for M in all_matchings(2 * k):
        R = matching_to_kroot(rs, M)
        lv = level(rs, U, R)
        assert lv == length(M.sigma()) == (length(M.tau()) - k) // 2 == len(matching_diagram(M))


def test_matching_examples(D6):
    U = build_U(D6, "odd:6")
    assert level(D6, U, matching_to_kroot(D6, Matching(((1, 2), (3, 4), (5, 6))))) == 0
    assert level(D6, U, matching_to_kroot(D6, Matching(((1, 6), (2, 5), (3, 4))))) == 6


def test_d6_hafnian_listing(D6):
    from qptriples.catalog.models import matching_label

    lab = matching_label(D6)
    h = quantum_hafnian(D6, build_U(D6, "odd:6"))
    got = {(e, frozenset(lab(b) for b in m)) for (m, e), c in h.terms.items()}
    assert set(h.terms.values()) == {1}
    assert got == term_set(QHF_D6)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_couple_completion_keeps_level(k):
    rs = build_root_system(f"D{2 * k}")
    U = build_U(rs, f"odd:{2 * k}")
    full = enumerate_omega(rs, rs.positive_ids)
    images = set()
    for R in enumerate_omega(rs, U).members:
        phi = couple_completion(rs, R)
        assert phi in full._index
        assert level(rs, rs.positive_ids, phi) == level(rs, U, R)
        images.add(phi)
    assert len(images) == len(enumerate_omega(rs, U))


# permutation model

@pytest.mark.parametrize("k", [2, 3, 4])
def test_permutation_levels(k):
    rs = build_root_system(f"D{2 * k}")
    _, U = triple_Tprime(rs, k)
    for pi in all_permutations(k):
        R = perm_to_kroot(rs, pi)
        res = residues_wrt(rs, U, R)
        assert res.level == length(pi) == len(perm_diagram(pi))
        assert set(res.residues) == perm_residues_formula(rs, pi)
    longest = tuple(range(k, 0, -1))
    assert level(rs, U, perm_to_kroot(rs, longest)) == k * (k - 1) // 2
    assert level(rs, U, perm_to_kroot(rs, tuple(range(1, k + 1)))) == 0


def test_rook_figure():
    rs = build_root_system("D8")
    _, U = triple_Tprime(rs, 4)
    drawn = (2, 4, 1, 3)
    assert perm_diagram(drawn) == [(1, 1), (2, 1), (2, 3)]
    for pi in (drawn, inverse(drawn)):
        assert residues_wrt(rs, U, perm_to_kroot(rs, pi)).level == 3


# sweeps over A and D

@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_triples_pass(n):
    rs = build_root_system(f"A{n}")
    for p in range(1, n + 1):
        assert verify_qp_triple(rs, *triple_T(rs, p)).ok


@pytest.mark.parametrize("n", range(1, 8))
def test_type_a_mirror_poincare(n):
    rs = build_root_system(f"A{n}")
    for p in range(1, n + 1):
        assert poincare(rs, build_U(rs, f"odd:{p}")) == poincare(rs, build_U(rs, f"odd:{n + 1 - p}"))


@pytest.mark.parametrize("n", range(4, 9))
def test_type_d_pattern(n):
    rs = build_root_system(f"D{n}")
    for p in range(1, n + 1):
        ok = verify_qp_triple(rs, *triple_T(rs, p)).ok
        if p <= n // 2:
            assert ok, p
        elif p < n - 2:
            assert not ok, p


@pytest.mark.parametrize("n", range(4, 9))
def test_paired_d_triples_pass(n):
    rs = build_root_system(f"D{n}")
    for p in range(1, n - 1):
        assert verify_qp_triple(rs, *triple_Tprime(rs, p)).ok


# table 1

def test_table1_rows():
    data = table1()
    rows = [(r["triple"], r["U"], r["omega"], r["kappa"], r["degrees"]) for r in data["rows"]]
    assert rows == TABLE1
    assert len(data["excluded"]) == 9
    assert all(r["failure"] == "scaled" for r in data["excluded"])


def test_table1_parallel_matches_serial():
    assert table1(jobs=2) == table1()


def test_evaluate_triple_report():
    r = evaluate_triple("E6", 4)
    assert not r["qp"] and r["failure"] == "scaled" and r["violations"]["scaled_violations"] > 0


def test_fano_counts(E7, E8):
    assert len(enumerate_omega(E7, build_U(E7, "odd:2"))) == 30
    assert len(enumerate_omega(E8, build_U(E8, "odd:2"))) == 240


# E8 and E7 structure

def test_e8_height_split(E8):
    th = E8.highest_root()
    layers = e8.height_layers(E8)
    assert [len(layers[i]) for i in (0, 1, 2)] == [63, 56, 1]
    members = enumerate_omega(E8, E8.positive_ids).members
    with_theta = [R for R in members if th in R]
    without = [R for R in members if th not in R]
    assert (len(with_theta), len(without)) == (135, 1890)
    U1 = set(layers[1])
    quad = enumerate_omega(E8, build_U(E8, "odd:8"))
    assert len(quad) == 630
    images = {}
    for R in without:
        q1, q0 = e8.e8_decompose(E8, R)
        assert tuple(sorted(set(R) & U1)) == q1
        assert set(q0) <= set(layers[0])
        assert is_coplanar(E8, q1) and is_coplanar(E8, q0)
        assert th in internal_residues(E8, q1).residues
        images[q1] = images.get(q1, 0) + 1
    assert set(images) == set(quad.members)
    assert set(images.values()) == {3}
    with pytest.raises(ContainsTheta):
        e8.e8_decompose(E8, with_theta[0])


def test_minimal_quadruple(E8):
    inst = build_instance(E8, *triple_T(E8, 8))
    mins, _ = extremal_elements(inst)
    assert [inst.members[x] for x in mins] == [e8.minimal_quadruple(E8)]
    assert inst.levels[mins[0]] == 0


def test_iota(E7, E8):
    U7 = build_U(E7, "odd:7")
    U8 = build_U(E8, "odd:8")
    om7 = enumerate_omega(E7, U7)
    images = {}
    for T in om7.members:
        T8 = e8.embed_e7(E7, E8, T)
        img = e8.iota(E8, T8)
        images[T] = img
        assert level(E7, U7, T) == level(E8, U8, img)
        assert e8.restrict_e8(E8, E7, T8) == T
        for node in range(1, 7):
            s7, s8 = E7.simple(node), E8.simple(node)
            assert e8.iota(E8, e8.embed_e7(E7, E8, standard_act(E7, s7, T))) == standard_act(E8, s8, img)
    assert len(set(images.values())) == 45
    assert images[e8.minimal_triple(E7)] == e8.minimal_quadruple(E8)
    with pytest.raises(NotATriple):
        e8.iota(E8, (0, 1, 2))


def test_abc_labels(E7):
    lab = e8.abc_labelling(E7)
    kinds = [v[0] for v in lab.values()]
    assert (kinds.count("a"), kinds.count("b"), kinds.count("c")) == (6, 6, 15)
    om = enumerate_omega(E7, build_U(E7, "odd:7"))
    shapes = ["".join(sorted(lab[b][0] for b in T)) for T in om.members]
    assert shapes.count("abc") == 30 and shapes.count("ccc") == 15
    assert sorted(lab[b] for b in e8.minimal_triple(E7)) == ["a1", "b6", "c16"]
    assert e8.canonical_label("c61") == "c16"


def test_qhf_abc_listing(E7):
    lab = e8.abc_labelling(E7)
    h = e8.qhf_prime(E7)
    got = {(e, frozenset(lab[b] for b in m)) for (m, e), c in h.terms.items()}
    assert got == term_set(QHF_ABC)


def test_closed_form_residues(E7):
    assert e8.rothe45_crosscheck(E7) == 45
    res, lv = e8.rothe45(["a4", "c24", "b2"])
    assert lv == 6 and res == {"a1", "a2", "a3", "c34", "c45", "c46"}
    assert e8.rothe45(["a2", "c26", "b6"])[1] == 1
    assert e8.rothe45(["c13", "c25", "c46"])[1] == 8
    assert e8.rothe45(["a1", "c16", "b6"])[1] == 0
    with pytest.raises(NotATriple):
        e8.rothe45(["a1", "c23", "b6"])


def test_invariant_cubic(E7):
    lab = e8.abc_inverse(E7)
    F = e8.invariant_cubic(E7)
    coef = lambda *ls: F.coefficient([lab[x] for x in ls])
    assert coef("a1", "c16", "b6") == 1
    assert coef("a2", "c26", "b6") == -1
    assert coef("c16", "c25", "c34") == 1
    for e, t in QHF_ABC:
        assert coef(*t.split()) == (-1) ** e
    assert e8.sign_flip_violations(E7) == []


def test_disjointness_graph(E7):
    om = enumerate_omega(E7, build_U(E7, "odd:7"))
    assert e8.strongly_regular_parameters(e8.disjointness_graph(om.members)) == (45, 32, 22, 24)
    assert e8.strongly_regular_parameters(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]])) is None


# game graphs

@pytest.mark.parametrize("name,p", [("E7", 7), ("E8", 8), ("D6", 6), ("A5", 2), ("D4", 4), ("E6", 1)])
def test_game_kernel_is_level_zero(name, p):
    rs = build_root_system(name)
    I, U = triple_T(rs, p)
    dag = game_dag(rs, I, U)
    zero = level_zero_members(rs, U)
    assert dag.kernels == zero
    for T in zero:
        assert dag.is_kernel(T)
        succ = dag.successors()
        assert not any(b in T for a in T for b in succ[a])
    assert all(rs.height(b) > rs.height(a) for a, b in dag.edges)


@pytest.mark.parametrize("name,p", [("D6", 6), ("A5", 2), ("D4", 4), ("A4", 2)])
def test_game_kernel_brute_force(name, p):
    rs = build_root_system(name)
    dag = game_dag(rs, *triple_T(rs, p))
    assert brute_force_kernels(dag) == dag.kernels


# shipped reference files

@pytest.mark.parametrize("name", ["table1.json", "cubic.txt", "qhf_d6.txt"])
def test_golden_files(name):
    from qptriples import golden

    assert golden.render(name) == golden.read(name)


def test_golden_table_is_json():
    from qptriples import golden

    data = json.loads(golden.read("table1.json"))
    assert len(data["rows"]) == 12
