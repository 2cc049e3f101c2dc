"""Batch referees for the order facts connecting containers and nuclei.

Each referee enumerates instances when the space fits the budget and
otherwise draws a seeded sample, so reports are reproducible from
(frame, suite, seed) alone.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

import numpy as np

from .containers import (
    IndexedPropContainer,
    container_sum,
    forces,
    instance_prenucleus,
    instance_reducible,
    oracle_modality,
    pred_of_nucleus,
)
from .frames import Frame
from .nuclei import (
    DEFAULT_ENUMERATION_LIMIT,
    Nucleus,
    enumerate_nuclei,
    nucleus_leq,
    sup_nuclei,
)

THEOREM_IDS = (
    "retraction",
    "forcing-iff",
    "oracle-leq",
    "least-above-instance",
    "sup",
    "surjection",
    "instance-vs-forcing",
)


@dataclass
class Budget:
    seed: int = 0
    cases: int = 500
    enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT
    # Extra (possibly bogus) nuclei injected into the retraction check.
    extra_nuclei: tuple[Nucleus, ...] = ()


@dataclass
class TheoremReport:
    theorem: str
    checked: int
    failures: list[str] = field(default_factory=list)
    seed: int = 0
    elapsed_ms: float = 0.0
    coverage: str = "exhaustive"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = True) -> dict:
        return {
            "theorem": self.theorem,
            "checked": self.checked,
            "failures": list(self.failures),
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3) if include_timing else 0,
            "coverage": self.coverage,
        }


# -- instance generators ------------------------------------------------


def all_single_shape_containers(frame: Frame) -> list[IndexedPropContainer]:
    """Every single-shape container: one per pair P(a) <= E(a)."""
    out = []
    for e in frame.all_elements():
        for pi in np.flatnonzero(frame.leq_table[:, e.index]):
            out.append(
                IndexedPropContainer(frame, {"a0": frame.el(int(pi))}, {"a0": e})
            )
    return out


def random_container(
    frame: Frame, rng: random.Random, max_shapes: int = 3
) -> IndexedPropContainer:
    k = rng.randint(1, max_shapes)
    pred: dict = {}
    extent: dict = {}
    for i in range(k):
        if rng.random() < 0.5:
            e = frame.top_index
        else:
            e = rng.randrange(len(frame))
        p = int(rng.choice(list(np.flatnonzero(frame.leq_table[:, e]))))
        pred[f"a{i}"] = frame.el(p)
        extent[f"a{i}"] = frame.el(e)
    return IndexedPropContainer(frame, pred, extent)


def surjective_relabeling(
    c: IndexedPropContainer, rng: random.Random
) -> IndexedPropContainer:
    """Precompose a container with a random surjection onto its shapes."""
    k = len(c.shapes)
    m = k + rng.randint(0, 2)
    targets = list(c.shapes) + [rng.choice(c.shapes) for _ in range(m - k)]
    rng.shuffle(targets)
    frame = c.frame
    pred = {}
    extent = {}
    for i, a in enumerate(targets):
        j = c.shapes.index(a)
        pred[f"b{i}"] = frame.el(int(c.prd[j]))
        extent[f"b{i}"] = frame.el(int(c.ext[j]))
    return IndexedPropContainer(frame, pred, extent)


def _containers_for(frame: Frame, budget: Budget, rng: random.Random):
    singles = all_single_shape_containers(frame)
    if len(singles) <= budget.cases:
        extra = [
            random_container(frame, rng) for _ in range(budget.cases - len(singles))
        ]
        return singles + extra, "exhaustive-singles-plus-sampled"
    return (
        [random_container(frame, rng) for _ in range(budget.cases)],
        f"sampled {budget.cases}",
    )


# -- individual referees --------------------------------------------------


def _check_retraction(frame: Frame, budget: Budget, rng: random.Random):
    nuclei = enumerate_nuclei(frame, budget.enumeration_limit) + budget.extra_nuclei
    failures = []
    for j in nuclei:
        k = oracle_modality(pred_of_nucleus(j))
        if k != j:
            failures.append(
                f"nucleus {list(map(int, j.table))} came back as {list(map(int, k.table))}"
            )
    return len(nuclei), failures, "exhaustive"


def _check_forcing_iff(frame: Frame, budget: Budget, rng: random.Random):
    nuclei = enumerate_nuclei(frame, budget.enumeration_limit)
    singles = all_single_shape_containers(frame)
    pairs = [(j, c) for j in nuclei for c in singles]
    coverage = "exhaustive-singles"
    if len(pairs) > budget.cases:
        pairs = [
            (rng.choice(nuclei), random_container(frame, rng))
            for _ in range(budget.cases)
        ]
        coverage = f"sampled {budget.cases}"
    failures = []
    for j, c in pairs:
        lhs = forces(j, c)
        rhs = nucleus_leq(oracle_modality(c), j)
        if lhs != rhs:
            failures.append(
                f"forces={lhs} but order={rhs} for j={list(map(int, j.table))}, c={c!r}"
            )
    return len(pairs), failures, coverage


def _check_oracle_leq(frame: Frame, budget: Budget, rng: random.Random):
    singles = all_single_shape_containers(frame)
    pairs = [(c, d) for c in singles for d in singles]
    coverage = "exhaustive-singles"
    if len(pairs) > budget.cases:
        pairs = [
            (random_container(frame, rng), random_container(frame, rng))
            for _ in range(budget.cases)
        ]
        coverage = f"sampled {budget.cases}"
    failures = []
    for c, d in pairs:
        od = oracle_modality(d)
        lhs = nucleus_leq(oracle_modality(c), od)
        rhs = bool(frame.leq_table[c.ext, od.table[c.prd]].all())
        if lhs != rhs:
            failures.append(f"order={lhs} but forcing={rhs} for c={c!r}, d={d!r}")
    return len(pairs), failures, coverage


def _check_least_above(frame: Frame, budget: Budget, rng: random.Random):
    nuclei = enumerate_nuclei(frame, budget.enumeration_limit)
    cs, coverage = _containers_for(frame, budget, rng)
    failures = []
    for c in cs:
        pre = instance_prenucleus(c)
        om = oracle_modality(c)
        if not frame.leq_table[pre.table, om.table].all():
            failures.append(f"modality not above single-query map for {c!r}")
            continue
        above = [k for k in nuclei if frame.leq_table[pre.table, k.table].all()]
        if any(not nucleus_leq(om, k) for k in above):
            failures.append(f"modality not least above single-query map for {c!r}")
    return len(cs), failures, coverage


def _check_sup(frame: Frame, budget: Budget, rng: random.Random):
    failures = []
    n_pairs = budget.cases
    for _ in range(n_pairs):
        c1 = random_container(frame, rng)
        c2 = random_container(frame, rng)
        lhs = oracle_modality(container_sum([c1, c2]))
        rhs = sup_nuclei(frame, [oracle_modality(c1), oracle_modality(c2)],
                         budget.enumeration_limit)
        if lhs != rhs:
            failures.append(f"sum modality {list(map(int, lhs.table))} != "
                            f"sup {list(map(int, rhs.table))} for {c1!r}, {c2!r}")
    return n_pairs, failures, f"sampled {n_pairs}"


def _check_surjection(frame: Frame, budget: Budget, rng: random.Random):
    failures = []
    for _ in range(budget.cases):
        c = random_container(frame, rng)
        cq = surjective_relabeling(c, rng)
        if oracle_modality(cq) != oracle_modality(c):
            failures.append(f"relabeling changed the modality for {c!r} -> {cq!r}")
    return budget.cases, failures, f"sampled {budget.cases}"


def _check_instance_vs_forcing(frame: Frame, budget: Budget, rng: random.Random):
    # Cross-checks the vectorized reducibility test against the elementwise
    # single-query reading: E_c(a) <= i_d(P_c(a)) for every shape a.
    cs, coverage = _containers_for(frame, budget, rng)
    failures = []
    for c in cs:
        d = random_container(frame, rng)
        lhs = instance_reducible(c, d)
        i_d = instance_prenucleus(d)
        rhs = all(
            frame.le(frame.el(int(e)), i_d(frame.el(int(p))))
            for e, p in zip(c.ext, c.prd)
        )
        if lhs != rhs:
            failures.append(f"reducibility {lhs} != single-query forcing {rhs} "
                            f"for c={c!r}, d={d!r}")
    return len(cs), failures, coverage


_CHECKERS = {
    "retraction": _check_retraction,
    "forcing-iff": _check_forcing_iff,
    "oracle-leq": _check_oracle_leq,
    "least-above-instance": _check_least_above,
    "sup": _check_sup,
    "surjection": _check_surjection,
    "instance-vs-forcing": _check_instance_vs_forcing,
}


def verify_theorems(
    frame: Frame,
    suite: tuple[str, ...] | None = None,
    budget: Budget | None = None,
) -> list[TheoremReport]:
    """Run the requested referees and return one report per theorem id."""
    budget = budget or Budget()
    ids = THEOREM_IDS if suite is None else tuple(suite)
    reports = []
    for name in ids:
        if name not in _CHECKERS:
            raise ValueError(f"unknown theorem id {name!r}")
        rng = random.Random(f"{budget.seed}:{name}")
        t0 = time.perf_counter()
        checked, failures, coverage = _CHECKERS[name](frame, budget, rng)
        reports.append(
            TheoremReport(
                theorem=name,
                checked=checked,
                failures=failures,
                seed=budget.seed,
                elapsed_ms=(time.perf_counter() - t0) * 1000.0,
                coverage=coverage,
            )
        )
    return reports
