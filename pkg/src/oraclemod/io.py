"""JSON readers and writers for the on-disk formats used by the CLI.

Frame elements serialize as sorted label arrays (``["p","q"]``); where JSON
forces a string key, the comma-joined form is used instead (bottom is the
empty string).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

import numpy as np

from .containers import IndexedPropContainer
from .errors import UnknownLabel
from .frames import Frame, FrameElement, Poset, downset_frame, poset_from_relation
from .nuclei import Nucleus
from .pca import Term, parse_term
from .trees import Leaf, SetContainer, Tree, node
from .weihrauch import ExtWeihrauchPredicate, PartitionedAssemblyPredicate


def load_json(path: str | Path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def dump_json(obj, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


# -- posets and frames --------------------------------------------------


def poset_from_dict(d: Mapping) -> Poset:
    return poset_from_relation(d["elements"], [tuple(p) for p in d.get("le", [])])


def poset_to_dict(p: Poset) -> dict:
    pairs = sorted(
        [a, b] for b in p.labels for a in p.below[b] if a != b
    )
    return {"elements": list(p.labels), "le": pairs}


def load_frame(path: str | Path) -> Frame:
    return downset_frame(poset_from_dict(load_json(path)))


def element_to_json(el: FrameElement) -> list[str]:
    return list(el.labels)


def element_from_json(frame: Frame, v) -> FrameElement:
    if isinstance(v, str):
        labels = [x for x in v.split(",") if x]
    else:
        labels = list(v)
    return frame.element(labels)


# -- nuclei ---------------------------------------------------------------


def nucleus_to_dict(j: Nucleus, frame_ref: str | None = None) -> dict:
    frame = j.frame
    table = {
        frame.el(i).key: element_to_json(frame.el(int(v)))
        for i, v in enumerate(j.table)
    }
    out: dict = {"table": table}
    if frame_ref is not None:
        out["frame"] = frame_ref
    return out


def nucleus_table_from_dict(frame: Frame, d: Mapping) -> np.ndarray:
    table = d["table"] if "table" in d else d
    arr = np.zeros(len(frame), dtype=np.int32)
    seen = set()
    for k, v in table.items():
        i = element_from_json(frame, k).index
        arr[i] = element_from_json(frame, v).index
        seen.add(i)
    if len(seen) != len(frame):
        raise UnknownLabel("nucleus table does not cover the whole carrier")
    return arr


# -- containers -------------------------------------------------------------


def container_from_dict(frame: Frame, d: Mapping) -> IndexedPropContainer:
    shapes = list(d["shapes"])
    pred = {a: element_from_json(frame, d["pred"][a]) for a in shapes}
    if "extent" in d:
        extent = {
            a: element_from_json(frame, d["extent"][a]) if a in d["extent"] else frame.top
            for a in shapes
        }
    else:
        extent = None
    return IndexedPropContainer(frame, pred, extent)


def container_to_dict(c: IndexedPropContainer, frame_ref: str | None = None) -> dict:
    out: dict = {
        "shapes": list(c.shapes),
        "pred": {
            a: element_to_json(c.frame.el(int(p))) for a, p in zip(c.shapes, c.prd)
        },
        "extent": {
            a: element_to_json(c.frame.el(int(e))) for a, e in zip(c.shapes, c.ext)
        },
    }
    if frame_ref is not None:
        out["frame"] = frame_ref
    return out


# -- set containers and trees ------------------------------------------------


def set_container_from_dict(d: Mapping) -> SetContainer:
    return SetContainer({a: list(ps) for a, ps in d["positions"].items()})


def set_container_to_dict(c: SetContainer) -> dict:
    return {"shapes": list(c.shapes), "positions": {a: list(ps) for a, ps in c.positions.items()}}


def tree_from_dict(c: SetContainer, d: Mapping) -> Tree:
    if "leaf" in d:
        return Leaf(d["leaf"])
    return node(c, d["node"], {u: tree_from_dict(c, sub) for u, sub in d["children"].items()})


def tree_to_dict(t: Tree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.value}
    return {"node": t.shape, "children": {u: tree_to_dict(sub) for u, sub in t.children}}


# -- realizability -------------------------------------------------------------


def weihrauch_predicate_from_dict(d: Mapping, fuel: int = 100_000) -> ExtWeihrauchPredicate:
    entries = []
    for entry in d["entries"]:
        inst = parse_term(entry["instance"], auto_declare=True)
        fams = [
            [parse_term(src, auto_declare=True) for src in family]
            for family in entry["families"]
        ]
        entries.append((inst, fams))
    return ExtWeihrauchPredicate(entries, fuel=fuel)


def assembly_from_dict(d: Mapping, fuel: int = 100_000) -> PartitionedAssemblyPredicate:
    rho = {x: parse_term(src, auto_declare=True) for x, src in d["rho"].items()}
    pred = {
        x: [parse_term(src, auto_declare=True) for src in srcs]
        for x, srcs in d["pred"].items()
    }
    return PartitionedAssemblyPredicate(rho, pred, fuel=fuel)


def terms_from_json(d) -> list[Term]:
    srcs = d["terms"] if isinstance(d, Mapping) else d
    return [parse_term(src, auto_declare=True) for src in srcs]
