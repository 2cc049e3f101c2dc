#!/usr/bin/env python3
"""Benchmark the JIT kernels against the pure-numpy fallback.

Builds a few larger downset frames (disjoint unions of short chains give
carriers 3^m), throws seeded random containers at both kernel paths, and
reports wall time plus the table-equality cross-check.  The fallback is
selected the same way users select it: via ORACLEMOD_NO_NUMBA.
"""

import os
import random
import time

import numpy as np

from oraclemod import _kernels
from oraclemod.frames import downset_frame, poset_from_relation


def chain_union_frame(m: int):
    labels = []
    pairs = []
    for i in range(m):
        labels += [f"a{i}", f"b{i}"]
        pairs.append((f"a{i}", f"b{i}"))
    return downset_frame(poset_from_relation(labels, pairs))


def random_instances(frame, k_shapes: int, count: int, seed: int):
    rng = random.Random(seed)
    n = len(frame)
    out = []
    for _ in range(count):
        ext = np.array([rng.randrange(n) for _ in range(k_shapes)], dtype=np.int32)
        prd = np.array(
            [int(rng.choice(list(np.flatnonzero(frame.leq_table[:, e])))) for e in ext],
            dtype=np.int32,
        )
        out.append((ext, prd))
    return out


def time_path(frame, instances, disable_numba: bool):
    os.environ["ORACLEMOD_NO_NUMBA"] = "1" if disable_numba else "0"
    tables = []
    t0 = time.perf_counter()
    for ext, prd in instances:
        t1 = _kernels.kleene_table(
            frame.meet_table, frame.join_table, frame.implies_table, ext, prd
        )
        t2 = _kernels.bruteforce_table(
            frame.leq_table,
            frame.meet_table,
            frame.implies_table,
            ext,
            prd,
            frame.top_index,
        )
        tables.append((t1, t2))
    return time.perf_counter() - t0, tables


def main():
    print(f"numba available: {_kernels.HAS_NUMBA}")
    rows = []
    for m, k_shapes, count in [(4, 8, 40), (5, 12, 20), (6, 16, 8)]:
        frame = chain_union_frame(m)
        instances = random_instances(frame, k_shapes, count, seed=20240000 + m)
        # warm the JIT outside the timed region
        os.environ["ORACLEMOD_NO_NUMBA"] = "0"
        _kernels.kleene_table(
            frame.meet_table, frame.join_table, frame.implies_table,
            instances[0][0], instances[0][1],
        )
        _kernels.bruteforce_table(
            frame.leq_table, frame.meet_table, frame.implies_table,
            instances[0][0], instances[0][1], frame.top_index,
        )
        t_nb, tabs_nb = time_path(frame, instances, disable_numba=False)
        t_np, tabs_np = time_path(frame, instances, disable_numba=True)
        agree = all(
            (a1 == b1).all() and (a2 == b2).all()
            for (a1, a2), (b1, b2) in zip(tabs_nb, tabs_np)
        )
        rows.append((len(frame), k_shapes, count, t_nb, t_np, agree))
    os.environ.pop("ORACLEMOD_NO_NUMBA", None)
    print(f"{'carrier':>8} {'shapes':>7} {'runs':>5} {'numba s':>9} {'numpy s':>9} "
          f"{'speedup':>8} {'agree':>6}")
    for n, k, c, t_nb, t_np, agree in rows:
        print(f"{n:>8} {k:>7} {c:>5} {t_nb:>9.4f} {t_np:>9.4f} "
              f"{t_np / t_nb:>8.2f} {str(agree):>6}")


if __name__ == "__main__":
    main()
