"""Time the compiled kernels against the pure Python fallback on E7/E8 workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from qptriples import build_root_system
from qptriples._kernels import backend
from qptriples.catalog import triple_T
from qptriples.ortho import enumerate_omega
from qptriples.qp import _image_rows, build_instance


def workloads():
    e8 = build_root_system("E8")
    e7 = build_root_system("E7")
    full = enumerate_omega(e8, e8.positive_ids)
    U = np.asarray(full.universe, dtype=np.int32)
    adj8 = e8.bmat[: e8.npos, : e8.npos] == 0
    np.fill_diagonal(adj8, False)
    inst8 = build_instance(e8, e8.nodes, e8.positive_ids, full)
    imgs = _image_rows(e8, inst8.reflections)
    I, U7 = triple_T(e7, 1)
    inst7 = build_instance(e7, I, U7)
    rp7 = inst7.refl_perm
    return {
        "max_cliques E8 positive roots": lambda k: k.max_cliques(adj8),
        "count_levels E8 8-roots": lambda k: k.count_levels(full.array, e8.refl, e8.positive_mask, U),
        "act_table E8 reflections": lambda k: k.act_table(imgs, full.array),
        "qp2_violations T(E7,1)": lambda k: k.qp2_violations(inst7.levels, rp7, inst7.gen_perm, 10),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = backend("python")
    try:
        cy = backend("cython")
    except ImportError:
        cy = None
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<32} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads().items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        if cy is None:
            print(f"{name:<32} {tp:>10.4f}")
            continue
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:<32} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
