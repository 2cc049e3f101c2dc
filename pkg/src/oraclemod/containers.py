"""Propositional containers over a frame and their induced modalities.

A container lists finitely many query shapes; each shape carries an extent
(the stage at which the query exists) and a predicate value (the truth of
its answer).  Globally-defined containers have extent top everywhere.  The
induced modality sends s to the least fixed point of

    t  |->  s \\/ \\/_a ( E(a) /\\ (P(a) => t) )

which the kernels compute either by Kleene iteration or by scanning all
prefixed points; the two must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import FrameMismatch, InternalInvariantViolation
from .frames import Frame, FrameElement
from .nuclei import Nucleus, validate_nucleus


class IndexedPropContainer:
    """Finitely many shapes with extent and predicate values in one frame."""

    def __init__(
        self,
        frame: Frame,
        pred: Mapping[str, FrameElement],
        extent: Mapping[str, FrameElement] | None = None,
    ):
        self.frame = frame
        self.shapes: tuple[str, ...] = tuple(sorted(pred))
        if extent is None:
            extent = {a: frame.top for a in self.shapes}
        if sorted(extent) != list(self.shapes):
            raise FrameMismatch("extent and pred must share the same shapes")
        self.ext = np.array(
            [frame.check_element(extent[a]) for a in self.shapes], dtype=np.int32
        )
        self.prd = np.array(
            [frame.check_element(pred[a]) for a in self.shapes], dtype=np.int32
        )

    def extent_of(self, shape: str) -> FrameElement:
        return self.frame.el(int(self.ext[self.shapes.index(shape)]))

    def pred_of(self, shape: str) -> FrameElement:
        return self.frame.el(int(self.prd[self.shapes.index(shape)]))

    @property
    def globally_defined(self) -> bool:
        return bool((self.ext == self.frame.top_index).all())

    def __len__(self) -> int:
        return len(self.shapes)

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{a}: {self.frame.el(int(e))!r}<={self.frame.el(int(p))!r}"
            for a, p, e in zip(self.shapes, self.ext, self.prd)
        )
        return f"Container({parts})"


def validate_container(c: IndexedPropContainer) -> bool:
    """A container is valid when every predicate sits under its extent."""
    return bool(c.frame.leq_table[c.prd, c.ext].all())


def container(
    frame: Frame,
    pred: Mapping[str, FrameElement],
    extent: Mapping[str, FrameElement] | None = None,
) -> IndexedPropContainer:
    return IndexedPropContainer(frame, pred, extent)


def lem_container(frame: Frame) -> IndexedPropContainer:
    """One query per element p, asking for p or its negation."""
    pred = {
        f"{{{el.key}}}": frame.join(el, frame.neg(el)) for el in frame.all_elements()
    }
    return IndexedPropContainer(frame, pred)


def counterexample_container(frame: Frame) -> IndexedPropContainer:
    """A single query whose answer is absurd; the induced modality is trivial."""
    return IndexedPropContainer(frame, {"a0": frame.bot})


def realized_container(frame: Frame) -> IndexedPropContainer:
    """A single query already answered; the induced modality is identity."""
    return IndexedPropContainer(frame, {"a0": frame.top})


def container_sum(
    cs: Sequence[IndexedPropContainer], frame: Frame | None = None
) -> IndexedPropContainer:
    """Disjoint union of containers, shapes tagged by component index.

    The nullary sum is the empty container; it needs the frame spelled out.
    """
    if not cs:
        if frame is None:
            raise ValueError("empty sum needs an explicit frame")
        return IndexedPropContainer(frame, {})
    frame = cs[0].frame
    pred: dict[str, FrameElement] = {}
    extent: dict[str, FrameElement] = {}
    for i, c in enumerate(cs):
        if c.frame is not frame:
            raise FrameMismatch("containers on different frames")
        for a, p, e in zip(c.shapes, c.prd, c.ext):
            pred[f"{i}:{a}"] = frame.el(int(p))
            extent[f"{i}:{a}"] = frame.el(int(e))
    return IndexedPropContainer(frame, pred, extent)


def empty_container(frame: Frame) -> IndexedPropContainer:
    return IndexedPropContainer(frame, {})


@dataclass
class PrenucleusMap:
    """A monotone (not necessarily inflationary or idempotent) table."""

    frame: Frame
    table: np.ndarray

    def __call__(self, x: FrameElement) -> FrameElement:
        return self.frame.el(int(self.table[self.frame.check_element(x)]))

    def is_monotone(self) -> bool:
        leq = self.frame.leq_table
        return bool((~leq | leq[self.table[:, None], self.table[None, :]]).all())


def instance_prenucleus(c: IndexedPropContainer) -> PrenucleusMap:
    """The single-query map t |-> \\/_a (E(a) /\\ (P(a) => t))."""
    frame = c.frame
    table = np.full(len(frame), frame.bot_index, dtype=np.int32)
    carrier = np.arange(len(frame))
    for e, p in zip(c.ext, c.prd):
        table = frame.join_table[table, frame.meet_table[e, frame.implies_table[p, carrier]]]
    return PrenucleusMap(frame, table)


def _as_nucleus(frame: Frame, table: np.ndarray) -> Nucleus:
    report = validate_nucleus(frame, table)
    if not report.valid:
        raise InternalInvariantViolation(
            f"computed modality violates nucleus laws: {report.law_names()}"
        )
    return Nucleus(frame, table)


def oracle_modality(c: IndexedPropContainer) -> Nucleus:
    """Least nucleus forcing the container, by Kleene iteration from s."""
    frame = c.frame
    table = _kernels.kleene_table(
        frame.meet_table, frame.join_table, frame.implies_table, c.ext, c.prd
    )
    return _as_nucleus(frame, table)


def oracle_modality_bruteforce(c: IndexedPropContainer) -> Nucleus:
    """Independent route: the meet of all prefixed points above each start."""
    frame = c.frame
    table = _kernels.bruteforce_table(
        frame.leq_table,
        frame.meet_table,
        frame.implies_table,
        c.ext,
        c.prd,
        frame.top_index,
    )
    return _as_nucleus(frame, table)


def forces(j: Nucleus, c: IndexedPropContainer) -> bool:
    """Whether the nucleus answers every query at its stage: E(a) <= j(P(a))."""
    if j.frame is not c.frame:
        raise FrameMismatch("nucleus and container on different frames")
    return bool(c.frame.leq_table[c.ext, j.table[c.prd]].all())


def pred_of_nucleus(j: Nucleus) -> IndexedPropContainer:
    """The container of stable queries: one shape per element s, existing at
    stage j(s) and asking for s itself."""
    frame = j.frame
    pred: dict[str, FrameElement] = {}
    extent: dict[str, FrameElement] = {}
    for i, el in enumerate(frame.all_elements()):
        name = f"{{{el.key}}}"
        extent[name] = frame.el(int(j.table[i]))
        pred[name] = frame.meet(el, extent[name])
    return IndexedPropContainer(frame, pred, extent)


def instance_reducible(c: IndexedPropContainer, d: IndexedPropContainer) -> bool:
    """Every c-query is answerable from one d-query at its own stage:
    E_c(a) <= \\/_b (E_d(b) /\\ (P_d(b) => P_c(a)))."""
    if c.frame is not d.frame:
        raise FrameMismatch("containers on different frames")
    frame = c.frame
    for ea, pa in zip(c.ext, c.prd):
        answerable = frame.bot
        for eb, pb in zip(d.ext, d.prd):
            step = frame.meet(
                frame.el(int(eb)),
                frame.implies(frame.el(int(pb)), frame.el(int(pa))),
            )
            answerable = frame.join(answerable, step)
        if not frame.le(frame.el(int(ea)), answerable):
            return False
    return True
