"""Oracle-computation trees over set-valued containers.

This module works in a classical two-valued meta: a container is either
degenerate (some shape has no positions, so the induced modality is
trivial and equality collapses) or not (the modality is identity).  Trees
are plain inductive values; the equifoliate predicate singles out those
that compute at most one value up to that collapsed equality, and such
trees descend to canonical sheaf elements.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import InternalInvariantViolation, UnknownLabel


class SetContainer:
    """Shapes with finite (possibly empty) position sets."""

    def __init__(self, positions: Mapping[str, Sequence[str]]):
        self.shapes: tuple[str, ...] = tuple(sorted(positions))
        self.positions: dict[str, tuple[str, ...]] = {
            a: tuple(sorted(positions[a])) for a in self.shapes
        }
        self.degenerate: bool = any(not ps for ps in self.positions.values())

    def __repr__(self) -> str:
        return f"SetContainer({self.positions!r})"


@dataclass(frozen=True)
class Leaf:
    value: str


@dataclass(frozen=True)
class Node:
    shape: str
    children: tuple[tuple[str, "Tree"], ...]  # keyed by position, sorted

    def child(self, position: str) -> "Tree":
        for u, t in self.children:
            if u == position:
                return t
        raise UnknownLabel(f"no child at position {position!r}")


Tree = Leaf | Node


def node(c: SetContainer, shape: str, children: Mapping[str, Tree]) -> Node:
    """Build a node, checking the children cover exactly the shape's positions."""
    if shape not in c.positions:
        raise UnknownLabel(f"shape {shape!r} not in container")
    want = c.positions[shape]
    if tuple(sorted(children)) != want:
        raise UnknownLabel(
            f"children keyed {sorted(children)} but shape has positions {list(want)}"
        )
    return Node(shape, tuple((u, children[u]) for u in want))


def leaf_values(t: Tree) -> frozenset[str]:
    if isinstance(t, Leaf):
        return frozenset((t.value,))
    out: set[str] = set()
    for _, sub in t.children:
        out |= leaf_values(sub)
    return frozenset(out)


def modal_eq(c: SetContainer, x: str, y: str) -> bool:
    """Equality up to the container's modality: plain equality unless the
    container is degenerate, in which case everything is identified."""
    return x == y or c.degenerate


def membership(c: SetContainer, x: str, t: Tree) -> bool:
    """x is computed by t: at a leaf up to modal equality, at a node along
    every branch (vacuously at empty-position nodes)."""
    if isinstance(t, Leaf):
        return modal_eq(c, x, t.value)
    return all(membership(c, x, sub) for _, sub in t.children)


def member_set(c: SetContainer, t: Tree, values: Sequence[str]) -> frozenset[str]:
    if isinstance(t, Leaf):
        return frozenset(x for x in values if modal_eq(c, x, t.value))
    acc = frozenset(values)
    for _, sub in t.children:
        acc &= member_set(c, sub, values)
    return acc


def _ambient_values(t: Tree, values: Sequence[str] | None) -> tuple[str, ...]:
    if values is not None:
        return tuple(values)
    # Leaf values decide membership for every occurring value; one fresh
    # value stands in for all the others.
    vs = sorted(leaf_values(t))
    fresh = "#fresh"
    while fresh in vs:
        fresh += "'"
    return tuple(vs) + (fresh,)


@dataclass
class EquiCheck:
    ok: bool
    witness: tuple[str, str, str] | None  # (value, position u, position v)
    values: tuple[str, ...]


def equifoliate(
    c: SetContainer, t: Tree, values: Sequence[str] | None = None
) -> EquiCheck:
    """Leaves always; a node when all children are equifoliate and sibling
    subtrees have the same member set over the ambient values."""
    vals = _ambient_values(t, values)

    def go(s: Tree) -> tuple[str, str, str] | None:
        if isinstance(s, Leaf):
            return None
        for _, sub in s.children:
            w = go(sub)
            if w is not None:
                return w
        sets = [(u, member_set(c, sub, vals)) for u, sub in s.children]
        for u, mu in sets:
            for v, mv in sets:
                missing = mu - mv
                if missing:
                    return (sorted(missing)[0], u, v)
        return None

    w = go(t)
    return EquiCheck(ok=w is None, witness=w, values=vals)


@dataclass(frozen=True)
class EquiTree:
    """A tree together with the record of its equifoliate check."""

    tree: Tree
    certificate: tuple[str, ...]  # ambient values the check ran over

    @staticmethod
    def check(
        c: SetContainer, tree: Tree, values: Sequence[str] | None = None
    ) -> "EquiTree":
        res = equifoliate(c, tree, values)
        if not res.ok:
            raise ValueError(f"tree is not equifoliate, witness {res.witness}")
        return EquiTree(tree, res.values)


def tree_bind(c: SetContainer, f: Callable[[str], Tree], t: Tree) -> Tree:
    """Graft f at every leaf."""
    if isinstance(t, Leaf):
        return f(t.value)
    return Node(t.shape, tuple((u, tree_bind(c, f, sub)) for u, sub in t.children))


@dataclass(frozen=True)
class CanonicalSheafElement:
    """Member-set form of a sheafification element: either the unique point
    of a collapsed (degenerate) sheaf, or a pure value."""

    collapsed: bool
    value: str | None = None

    @staticmethod
    def pure(v: str) -> "CanonicalSheafElement":
        return CanonicalSheafElement(collapsed=False, value=v)

    @staticmethod
    def collapse() -> "CanonicalSheafElement":
        return CanonicalSheafElement(collapsed=True)

    def contains(self, x: str) -> bool:
        return True if self.collapsed else x == self.value


def delta(c: SetContainer, e: EquiTree) -> CanonicalSheafElement:
    """Descend an equifoliate tree to its canonical sheaf element."""
    if c.degenerate:
        return CanonicalSheafElement.collapse()
    vals = _ambient_values(e.tree, None)
    members = member_set(c, e.tree, vals)
    if len(members) != 1:
        raise InternalInvariantViolation(
            f"equifoliate tree over nondegenerate container has members {sorted(members)}"
        )
    return CanonicalSheafElement.pure(next(iter(members)))


# -- sheaf classification ---------------------------------------------------


@dataclass
class SheafClassification:
    """Which types carry a structure map for the truncated predicate."""

    kind: str  # "all_types" | "singletons_only"
    xsize: int
    is_sheaf: bool
    structure_map: dict[str, list[int]] | None
    violated: str | None  # "i" | "ii" | "iii"


def sheaf_classify(p: Mapping[str, bool], xsize: int) -> SheafClassification:
    """Classify which value sets are sheaves for a Boolean answerability
    predicate on shapes.

    When every shape is answerable, every set is a sheaf and the structure
    map evaluates a branch family at the answer.  When some shape is not,
    only singletons are sheaves: the empty set has no structure map
    (condition i) and two distinct values violate the second sheaf equality
    (condition iii).
    """
    shapes = sorted(p)
    all_true = all(p[a] for a in shapes)
    if all_true:
        d = {a: list(range(xsize)) for a in shapes}
        return SheafClassification("all_types", xsize, True, d, None)
    if xsize == 0:
        return SheafClassification("singletons_only", xsize, False, None, "i")
    if xsize == 1:
        d = {a: [0] * (xsize if p[a] else 1) for a in shapes}
        return SheafClassification("singletons_only", xsize, True, d, None)
    return SheafClassification("singletons_only", xsize, False, None, "iii")


# -- randomized suites -------------------------------------------------------

SUITE_NAMES = (
    "monad-laws",
    "equifoliate-bind",
    "mem-bind",
    "single-member",
    "delta-membership",
)


def _rand_container(rng: random.Random, max_shapes: int, max_positions: int,
                    allow_degenerate: bool) -> SetContainer:
    k = rng.randint(1, max_shapes)
    lo = 0 if allow_degenerate else 1
    return SetContainer(
        {
            f"a{i}": [f"u{j}" for j in range(rng.randint(lo, max_positions))]
            for i in range(k)
        }
    )


def _rand_tree(rng: random.Random, c: SetContainer, values: Sequence[str],
               depth: int) -> Tree:
    if depth == 0 or rng.random() < 0.35:
        return Leaf(rng.choice(list(values)))
    a = rng.choice(c.shapes)
    return Node(
        a,
        tuple(
            (u, _rand_tree(rng, c, values, depth - 1)) for u in c.positions[a]
        ),
    )


def _rand_equifoliate_tree(rng: random.Random, c: SetContainer,
                           values: Sequence[str], depth: int) -> Tree:
    if c.degenerate:
        return _rand_tree(rng, c, values, depth)
    # Over a nondegenerate container the equifoliate trees are exactly the
    # ones whose leaves all carry one common value.
    v = rng.choice(list(values))
    return _rand_tree(rng, c, [v], depth)


def run_tree_suites(
    seed: int,
    cases: int,
    depth: int = 4,
    max_shapes: int = 3,
    max_positions: int = 3,
    max_values: int = 3,
) -> list[dict]:
    """Run the randomized law suites; returns one JSON-ready report each."""
    reports = []
    for name in SUITE_NAMES:
        rng = random.Random(f"{seed}:{name}")
        failures: list[str] = []
        for i in range(cases):
            values = [f"x{j}" for j in range(rng.randint(1, max_values))]
            c = _rand_container(rng, max_shapes, max_positions, allow_degenerate=True)
            fails = _run_case(name, rng, c, values, depth)
            if fails:
                failures.append(f"case {i}: {fails}")
        reports.append(
            {"suite": name, "cases": cases, "failures": failures, "seed": seed}
        )
    return reports


def _run_case(name: str, rng: random.Random, c: SetContainer,
              values: Sequence[str], depth: int) -> str | None:
    table = {v: _rand_tree(rng, c, values, depth - 1) for v in values}
    f = lambda v: table[v]  # noqa: E731

    if name == "monad-laws":
        t = _rand_tree(rng, c, values, depth)
        x = rng.choice(list(values))
        if tree_bind(c, f, Leaf(x)) != f(x):
            return f"left unit at {x}"
        if tree_bind(c, Leaf, t) != t:
            return "right unit"
        g_table = {v: _rand_tree(rng, c, values, depth - 1) for v in values}
        g = lambda v: g_table[v]  # noqa: E731
        lhs = tree_bind(c, g, tree_bind(c, f, t))
        rhs = tree_bind(c, lambda v: tree_bind(c, g, f(v)), t)
        if lhs != rhs:
            return "associativity"
        return None

    if name == "equifoliate-bind":
        t = _rand_equifoliate_tree(rng, c, values, depth)
        etable = {v: _rand_equifoliate_tree(rng, c, values, depth - 1) for v in values}
        bound = tree_bind(c, lambda v: etable[v], t)
        if not equifoliate(c, bound, values).ok:
            return "bind broke the equifoliate certificate"
        return None

    if name == "mem-bind":
        t = _rand_equifoliate_tree(rng, c, values, depth)
        bound = tree_bind(c, f, t)
        for y in values:
            lhs = membership(c, y, bound)
            rhs = all(
                (not membership(c, x, t)) or membership(c, y, f(x)) for x in values
            )
            if lhs != rhs:
                return f"membership mismatch at {y}"
        return None

    if name == "single-member":
        t = _rand_equifoliate_tree(rng, c, values, depth)
        ms = member_set(c, t, values)
        if c.degenerate:
            if ms != frozenset(values):
                return f"degenerate member set {sorted(ms)}"
        elif len(ms) != 1:
            return f"member set {sorted(ms)} not a singleton"
        return None

    if name == "delta-membership":
        t = _rand_equifoliate_tree(rng, c, values, depth)
        e = EquiTree.check(c, t, values)
        img = delta(c, e)
        for x in values:
            if membership(c, x, t) != img.contains(x):
                return f"descent changed membership of {x}"
        return None

    raise ValueError(f"unknown suite {name!r}")
