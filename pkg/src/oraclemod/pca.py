"""A small partial combinatory algebra: S, K, oracle constants, and
fuel-bounded normal-order evaluation.

Terms are finite application trees.  Evaluation contracts the leftmost
outermost redex (K x y, S x y z, or a constant applied to a listed normal
form) and then normalizes the remaining arguments, so a returned value has
no enabled redex anywhere.  Running out of fuel is an ordinary result, not
an error: definedness is only semi-decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ArityError, TermSyntaxError, UnknownConstant


@dataclass(frozen=True)
class Prim:
    name: str  # "S" or "K"

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    """A named oracle constant; identity is the name, the rewrite rules are
    evaluation behaviour only."""

    name: str
    rules: tuple[tuple["Term", "Term"], ...] = field(
        default=(), compare=False, hash=False
    )

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"

    def __repr__(self) -> str:
        return pp(self)


Term = Prim | Const | App

S = Prim("S")
K = Prim("K")


def app(*terms: Term) -> Term:
    """Left-associated application."""
    if not terms:
        raise ArityError("application needs at least one term")
    acc = terms[0]
    for t in terms[1:]:
        acc = App(acc, t)
    return acc


def pp(t: Term) -> str:
    """Print with minimal parentheses; application associates left."""
    if isinstance(t, (Prim, Const)):
        return t.name
    head = pp(t.fn)
    arg = pp(t.arg) if isinstance(t.arg, (Prim, Const)) else f"({pp(t.arg)})"
    return f"{head} {arg}"


def mentions_constants(t: Term) -> bool:
    if isinstance(t, Const):
        return True
    if isinstance(t, App):
        return mentions_constants(t.fn) or mentions_constants(t.arg)
    return False


# -- parsing ------------------------------------------------------------


def _tokenize(src: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            out.append(ch)
            i += 1
        elif ch.isalnum() or ch in "_'":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            out.append(src[i:j])
            i = j
        else:
            raise TermSyntaxError(f"unexpected character {ch!r} at offset {i}")
    return out


def parse_term(
    src: str,
    constants: Mapping[str, Const] | None = None,
    auto_declare: bool = False,
) -> Term:
    """Parse ``atom+`` with left-associative application.

    Identifiers other than S and K resolve against ``constants``; with
    ``auto_declare`` unknown names become fresh inert constants instead of
    an error.
    """
    constants = dict(constants or {})
    tokens = _tokenize(src)
    pos = 0

    def atom() -> Term:
        nonlocal pos
        tok = tokens[pos]
        if tok == "(":
            pos += 1
            t = expr()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise TermSyntaxError("unbalanced parenthesis")
            pos += 1
            return t
        if tok == ")":
            raise TermSyntaxError("unexpected ')'")
        pos += 1
        if tok == "S":
            return S
        if tok == "K":
            return K
        if tok in constants:
            return constants[tok]
        if auto_declare:
            constants[tok] = Const(tok)
            return constants[tok]
        raise UnknownConstant(f"undeclared constant {tok!r}")

    def expr() -> Term:
        nonlocal pos
        t = atom()
        while pos < len(tokens) and tokens[pos] != ")":
            t = App(t, atom())
        return t

    if not tokens:
        raise TermSyntaxError("empty term")
    t = expr()
    if pos != len(tokens):
        raise TermSyntaxError("trailing input")
    return t


# -- evaluation ----------------------------------------------------------


@dataclass
class EvalResult:
    term: Term | None
    steps: int

    @property
    def diverged(self) -> bool:
        return self.term is None


class _OutOfFuel(Exception):
    pass


class _Fuel:
    __slots__ = ("left",)

    def __init__(self, amount: int):
        self.left = amount

    def spend(self) -> None:
        if self.left <= 0:
            raise _OutOfFuel
        self.left -= 1


def _norm(t: Term, fuel: _Fuel, memo: dict) -> Term:
    # Contractions share subterm objects (S duplicates its last argument by
    # reference), so memoizing by identity keeps repeated occurrences from
    # being renormalized and recharged.  The argument stack keeps one head
    # step O(1); stack[-1] is always the leftmost argument.
    hit = memo.get(id(t))
    if hit is not None:
        return hit[1]
    head = t
    stack: list[Term] = []
    while True:
        while isinstance(head, App):
            stack.append(head.arg)
            head = head.fn
        if isinstance(head, Prim) and head.name == "K" and len(stack) >= 2:
            fuel.spend()
            head = stack.pop()
            stack.pop()
        elif isinstance(head, Prim) and head.name == "S" and len(stack) >= 3:
            fuel.spend()
            x, y, z = stack.pop(), stack.pop(), stack.pop()
            stack.append(App(y, z))
            stack.append(z)
            head = x
        elif isinstance(head, Const) and head.rules and stack:
            stack[-1] = _norm(stack[-1], fuel, memo)
            for lhs, rhs in head.rules:
                if lhs == stack[-1]:
                    fuel.spend()
                    stack.pop()
                    head = rhs
                    break
            else:
                break
        else:
            break
    out = head
    while stack:
        out = App(out, _norm(stack.pop(), fuel, memo))
    memo[id(t)] = (t, out)
    return out


def eval_term(t: Term, fuel: int = 100_000) -> EvalResult:
    """Normalize a closed term within a step budget."""
    cell = _Fuel(fuel)
    try:
        nf = _norm(t, cell, {})
    except _OutOfFuel:
        return EvalResult(term=None, steps=fuel)
    except RecursionError:
        return EvalResult(term=None, steps=fuel - cell.left)
    return EvalResult(term=nf, steps=fuel - cell.left)


# -- standard encodings ----------------------------------------------------

I_TERM = app(S, K, K)
PAIR_FST = app(S, I_TERM, App(K, K))
PAIR_SND = app(S, I_TERM, App(K, App(K, I_TERM)))


def pair(p: Term, q: Term) -> Term:
    # S (S I (K p)) (K q) z  reduces to  z p q.
    return app(S, app(S, I_TERM, App(K, p)), App(K, q))


def numeral(n: int) -> Term:
    if n < 0:
        raise ArityError("numerals are nonnegative")
    t: Term = I_TERM
    for _ in range(n):
        t = pair(K, t)
    return t


def tag_leaf(a: Term) -> Term:
    return pair(numeral(0), a)


def tag_node(b: Term, c: Term) -> Term:
    return pair(numeral(1), pair(b, c))


def encode(kind: str, args: Sequence[Term] = (), n: int | None = None) -> Term:
    """Dispatcher over the standard encodings; arity is checked."""
    def need(k: int) -> None:
        if len(args) != k:
            raise ArityError(f"{kind} takes {k} arguments, got {len(args)}")

    if kind == "pair":
        need(2)
        return pair(args[0], args[1])
    if kind == "fst":
        need(0)
        return PAIR_FST
    if kind == "snd":
        need(0)
        return PAIR_SND
    if kind == "numeral":
        need(0)
        if n is None:
            raise ArityError("numeral needs n")
        return numeral(n)
    if kind == "tag_leaf":
        need(1)
        return tag_leaf(args[0])
    if kind == "tag_node":
        need(2)
        return tag_node(args[0], args[1])
    raise ArityError(f"unknown encoder kind {kind!r}")


def match_pair(t: Term) -> tuple[Term, Term] | None:
    """Destructure the canonical normal form S (S I (K p)) (K q) -> (p, q)."""
    if not (isinstance(t, App) and isinstance(t.fn, App) and t.fn.fn == S):
        return None
    left, right = t.fn.arg, t.arg
    if not (isinstance(right, App) and right.fn == K):
        return None
    if not (
        isinstance(left, App)
        and isinstance(left.fn, App)
        and left.fn.fn == S
        and left.fn.arg == I_TERM
        and isinstance(left.arg, App)
        and left.arg.fn == K
    ):
        return None
    return left.arg.arg, right.arg
