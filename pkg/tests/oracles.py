"""Independent brute-force oracles used to freeze expected test values.

Everything here stays deliberately naive: powerset filters, closure by
saturation, residuation scans, and the full inflationary-table filter.
None of it shares code with the package's own computation paths.
"""

import itertools

import numpy as np


def transitive_closure_pairs(labels, pairs):
    rel = set(pairs) | {(x, x) for x in labels}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def powerset_downsets(labels, closed_pairs):
    """All downward-closed subsets, by filtering the full powerset."""
    out = []
    for r in range(len(labels) + 1):
        for comb in itertools.combinations(labels, r):
            s = frozenset(comb)
            if all(a in s for (a, b) in closed_pairs if b in s):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


def residuation_scan(frame, b: int, c: int) -> int:
    """Largest d with meet(d, b) <= c, found by folding join over the scan."""
    acc = frame.bot_index
    for d in range(len(frame)):
        if frame.leq_table[frame.meet_table[d, b], c]:
            acc = int(frame.join_table[acc, d])
    return acc


def all_inflationary_tables(frame):
    ups = [list(map(int, np.flatnonzero(frame.leq_table[x]))) for x in range(len(frame))]
    return np.array(list(itertools.product(*ups)), dtype=np.int32)


def bruteforce_nuclei(frame):
    """Filter every inflationary table through the three remaining laws."""
    tables = all_inflationary_tables(frame)
    n = len(frame)
    idx = np.arange(tables.shape[0])[:, None]
    idem = (tables[idx, tables] == tables).all(axis=1)
    meet = frame.meet_table
    lhs = tables[:, meet.reshape(-1)]
    rhs = meet[
        tables[:, np.repeat(np.arange(n), n)], tables[:, np.tile(np.arange(n), n)]
    ]
    meets = (lhs == rhs).all(axis=1)
    keep = tables[idem & meets]
    return sorted(tuple(map(int, t)) for t in keep)
