"""Hot fixed-point kernels over frame tables.

Both oracle-modality computations reduce to integer table recursions:

* ``kleene_table`` iterates t := s \\/ \\/_a (E_a /\\ (P_a => t)) from t = s
  until it stabilizes, for every start s;
* ``prefixed_mask`` / ``bruteforce_table`` realize the same operator as the
  meet of all prefixed points.

The JIT-compiled path is used by default; set ``ORACLEMOD_NO_NUMBA=1`` to
force the pure-numpy fallback (``benchmarks/bench_kernels.py`` compares the
two). Both paths produce bit-identical tables.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap


def use_numba() -> bool:
    return HAS_NUMBA and os.environ.get("ORACLEMOD_NO_NUMBA", "0") not in (
        "1",
        "true",
        "yes",
    )


@njit(cache=True)
def _kleene_nb(meet, join, implies, ext, prd):  # pragma: no cover - jitted
    n = meet.shape[0]
    k = ext.shape[0]
    out = np.empty(n, dtype=np.int32)
    for s in range(n):
        t = s
        while True:
            nxt = s
            for a in range(k):
                nxt = join[nxt, meet[ext[a], implies[prd[a], t]]]
            if nxt == t:
                break
            t = nxt
        out[s] = t
    return out


def _kleene_np(meet, join, implies, ext, prd):
    n = meet.shape[0]
    start = np.arange(n, dtype=np.int32)
    t = start.copy()
    while True:
        nxt = start.copy()
        for a in range(ext.shape[0]):
            nxt = join[nxt, meet[ext[a], implies[prd[a], t]]]
        if (nxt == t).all():
            return t
        t = nxt


@njit(cache=True)
def _prefixed_nb(leq, meet, implies, ext, prd):  # pragma: no cover - jitted
    n = meet.shape[0]
    k = ext.shape[0]
    out = np.empty(n, dtype=np.bool_)
    for r in range(n):
        good = True
        for a in range(k):
            if not leq[meet[ext[a], implies[prd[a], r]], r]:
                good = False
                break
        out[r] = good
    return out


def _prefixed_np(leq, meet, implies, ext, prd):
    n = meet.shape[0]
    if ext.shape[0] == 0:
        return np.ones(n, dtype=bool)
    carrier = np.arange(n)
    rows = meet[ext[:, None], implies[prd[:, None], carrier[None, :]]]
    return leq[rows, carrier[None, :]].all(axis=0)


@njit(cache=True)
def _meet_over_nb(leq, meet, prefixed, top):  # pragma: no cover - jitted
    n = meet.shape[0]
    out = np.empty(n, dtype=np.int32)
    for s in range(n):
        acc = top
        for r in range(n):
            if prefixed[r] and leq[s, r]:
                acc = meet[acc, r]
        out[s] = acc
    return out


def _meet_over_np(leq, meet, prefixed, top):
    n = meet.shape[0]
    acc = np.full(n, top, dtype=np.int32)
    for r in np.flatnonzero(prefixed):
        acc = np.where(leq[:, r], meet[acc, r], acc)
    return acc


def kleene_table(meet, join, implies, ext, prd) -> np.ndarray:
    """Least-fixed-point table for the query operator, one entry per start."""
    if use_numba():
        return _kleene_nb(meet, join, implies, ext, prd)
    return _kleene_np(meet, join, implies, ext, prd)


def prefixed_mask(leq, meet, implies, ext, prd) -> np.ndarray:
    """Boolean mask of the prefixed points of the query operator."""
    if use_numba():
        return _prefixed_nb(leq, meet, implies, ext, prd)
    return _prefixed_np(leq, meet, implies, ext, prd)


def bruteforce_table(leq, meet, implies, ext, prd, top: int) -> np.ndarray:
    """Modality table as the meet of all prefixed points above each start."""
    pref = prefixed_mask(leq, meet, implies, ext, prd)
    if use_numba():
        return _meet_over_nb(leq, meet, pref, top)
    return _meet_over_np(leq, meet, pref, top)
