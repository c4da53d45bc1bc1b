"""Exact algebra of basic clopen cylinders of the Baire space.

An expression is a finite boolean combination of atoms ``S(a)``, where the
atom denotes the set of branches extending the finite sequence ``a``.
Whether a branch satisfies an expression depends only on which mentioned
sequences are prefixes of the branch.  The prefixes of a single branch are
linearly ordered, so the realizable membership types are exactly the
chains ``{m in mentions : m prefix of c}`` for ``c`` ranging over the
mentions and the empty sequence: because the alphabet is infinite, each
such chain is realized by extending its top with a value that no mention
uses at that position.  Enumerating these finitely many chains decides
emptiness exactly, and inclusion and equality reduce to emptiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import count, product
from typing import Callable, Iterator, Optional

from .seq import BranchRule, Seq, is_prefix


class EmptySetError(ValueError):
    """Raised when an operation requires a nonempty set."""


class WindowError(ValueError):
    """Raised when a window is too small to evaluate an expression."""


class Expr:
    """Base class for cylinder expressions.  Values are immutable."""

    __slots__ = ()

    def __or__(self, other: "Expr") -> "Expr":
        return Union(self, other)

    def __and__(self, other: "Expr") -> "Expr":
        return Inter(self, other)

    def __sub__(self, other: "Expr") -> "Expr":
        return Diff(self, other)


@dataclass(frozen=True, slots=True)
class Atom(Expr):
    entries: Seq


@dataclass(frozen=True, slots=True)
class Union(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Inter(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Diff(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class _FullExpr(Expr):
    pass


@dataclass(frozen=True, slots=True)
class _EmptyExpr(Expr):
    pass


FULL = _FullExpr()
EMPTY = _EmptyExpr()


def cyl(*entries: int) -> Atom:
    """Sugar for a basic cylinder atom."""
    return Atom(tuple(entries))


@lru_cache(maxsize=None)
def mentions(e: Expr) -> frozenset[Seq]:
    """All atom sequences occurring in the expression."""
    match e:
        case Atom(a):
            return frozenset((a,))
        case Union(l, r) | Inter(l, r) | Diff(l, r):
            return mentions(l) | mentions(r)
        case _FullExpr() | _EmptyExpr():
            return frozenset()
    raise TypeError(f"not a cylinder expression: {e!r}")


def _satisfies(e: Expr, chain: frozenset[Seq]) -> bool:
    match e:
        case Atom(a):
            return a in chain
        case Union(l, r):
            return _satisfies(l, chain) or _satisfies(r, chain)
        case Inter(l, r):
            return _satisfies(l, chain) and _satisfies(r, chain)
        case Diff(l, r):
            return _satisfies(l, chain) and not _satisfies(r, chain)
        case _FullExpr():
            return True
        case _EmptyExpr():
            return False
    raise TypeError(f"not a cylinder expression: {e!r}")


def _chain_below(ms: frozenset[Seq], c: Seq) -> frozenset[Seq]:
    return frozenset(m for m in ms if is_prefix(m, c))


def _candidates(ms: frozenset[Seq]) -> list[Seq]:
    # the empty sequence first, then mentions in (length, lex) order
    return [()] + sorted(ms, key=lambda s: (len(s), s))


def is_empty(e: Expr) -> bool:
    ms = mentions(e)
    return not any(_satisfies(e, _chain_below(ms, c)) for c in _candidates(ms))


def subset(e1: Expr, e2: Expr) -> bool:
    return is_empty(Diff(e1, e2))


def equal(e1: Expr, e2: Expr) -> bool:
    return subset(e1, e2) and subset(e2, e1)


def intersects(e1: Expr, e2: Expr) -> bool:
    return not is_empty(Inter(e1, e2))


def contains_branch(e: Expr, p: BranchRule) -> bool:
    """Exact membership; reads ``p`` only up to the longest mention."""
    match e:
        case Atom(a):
            return is_prefix(a, p)
        case Union(l, r):
            return contains_branch(l, p) or contains_branch(r, p)
        case Inter(l, r):
            return contains_branch(l, p) and contains_branch(r, p)
        case Diff(l, r):
            return contains_branch(l, p) and not contains_branch(r, p)
        case _FullExpr():
            return True
        case _EmptyExpr():
            return False
    raise TypeError(f"not a cylinder expression: {e!r}")


def fresh_value(ms: frozenset[Seq], position: int) -> int:
    """Smallest natural not used at ``position`` by any mention long enough."""
    used = {m[position] for m in ms if len(m) > position}
    v = 0
    while v in used:
        v += 1
    return v


def witness_cylinder(e: Expr) -> Optional[Seq]:
    """A sequence ``w`` with cylinder ``S(w)`` inside ``e``, or None if empty.

    Canonical rule: take the first satisfying chain (candidates in
    (length, lex) order, empty chain first) and always extend its top by
    the smallest fresh value at that position.  Branches through the
    result all share the satisfying membership type, which makes the
    inclusion exact.
    """
    ms = mentions(e)
    for c in _candidates(ms):
        if _satisfies(e, _chain_below(ms, c)):
            return c + (fresh_value(ms, len(c)),)
    return None


def strict_witness(e: Expr) -> Optional[Seq]:
    """A sequence ``c`` with ``S(c)`` inside ``e`` and different from ``e``.

    Appending one more value to a witness is enough: the result is a
    proper subset of the witness cylinder, which is itself inside ``e``.
    """
    w = witness_cylinder(e)
    return None if w is None else w + (0,)


# -- minimal antichains -------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Family:
    """All one-step extensions of ``stem`` whose last value avoids ``excluded``."""

    stem: Seq
    excluded: frozenset[int]


@dataclass(frozen=True, slots=True)
class Antichain:
    """The minimal cylinders inside an expression.

    Concrete members are listed outright; each family stands for the
    infinitely many fresh one-step extensions of its stem.  The fair
    member order lists concrete members first and then interleaves the
    families round-robin.
    """

    concrete: tuple[Seq, ...]
    families: tuple[Family, ...]

    @property
    def is_infinite(self) -> bool:
        return bool(self.families)

    def member(self, i: int) -> Seq:
        if i < len(self.concrete):
            return self.concrete[i]
        if not self.families:
            raise IndexError(i)
        k = i - len(self.concrete)
        fam = self.families[k % len(self.families)]
        return fam.stem + (_allowed_value(fam.excluded, k // len(self.families)),)

    def members(self) -> Iterator[Seq]:
        if self.families:
            return (self.member(i) for i in count())
        return iter(self.concrete)

    def denotes(self, s: Seq) -> bool:
        if s in self.concrete:
            return True
        if not s:
            return False
        return any(f.stem == s[:-1] and s[-1] not in f.excluded
                   for f in self.families)


def _allowed_value(excluded: frozenset[int], j: int) -> int:
    v = 0
    while True:
        if v not in excluded:
            if j == 0:
                return v
            j -= 1
        v += 1


def minimal_antichain(e: Expr) -> Antichain:
    """The set of cylinders inside ``e`` whose parent cylinder is not inside.

    Descends the tree of mention prefixes; at a node either the node
    cylinder is inside (emit and stop), or disjoint (prune), or the node
    splits: the finitely many values mentioned at that position are
    explored explicitly and all remaining values behave identically, so
    one representative decides the whole fresh family.
    """
    if is_empty(e):
        raise EmptySetError("no antichain for the empty set")
    ms = mentions(e)
    concrete: list[Seq] = []
    families: list[Family] = []

    def descend(c: Seq) -> None:
        here = Atom(c)
        if subset(here, e):
            concrete.append(c)
            return
        if not intersects(here, e):
            return
        pos = len(c)
        explicit = sorted({m[pos] for m in ms if len(m) > pos and m[:pos] == c})
        if subset(Atom(c + (fresh_value(ms, pos),)), e):
            families.append(Family(c, frozenset(explicit)))
        for v in explicit:
            descend(c + (v,))

    descend(())
    return Antichain(tuple(concrete), tuple(families))


# -- window oracle ------------------------------------------------------------

def trace_window(e: Expr, depth: int, breadth: int) -> frozenset[Seq]:
    """All length-``depth`` words over ``{0..breadth}`` whose extensions satisfy ``e``.

    The value ``breadth`` stands for the whole class of values no mention
    uses; under the precondition (mentions no longer than ``depth`` with
    entries below ``breadth``) this finite trace determines the expression.
    """
    for m in mentions(e):
        if len(m) > depth or any(x >= breadth for x in m):
            raise WindowError(f"window d={depth}, b={breadth} too small for {m}")
    alphabet = range(breadth + 1)
    return frozenset(w for w in product(alphabet, repeat=depth)
                     if _word_satisfies(e, w))


def _word_satisfies(e: Expr, w: Seq) -> bool:
    match e:
        case Atom(a):
            return w[: len(a)] == a
        case Union(l, r):
            return _word_satisfies(l, w) or _word_satisfies(r, w)
        case Inter(l, r):
            return _word_satisfies(l, w) and _word_satisfies(r, w)
        case Diff(l, r):
            return _word_satisfies(l, w) and not _word_satisfies(r, w)
        case _FullExpr():
            return True
        case _EmptyExpr():
            return False
    raise TypeError(f"not a cylinder expression: {e!r}")


# -- finitely branching trees and nowhere-dense avoidance ---------------------

@dataclass(frozen=True)
class NdTree:
    """A downward-closed, finitely branching set of finite sequences.

    ``branching`` bounds every entry of every member; with the infinite
    alphabet this makes the branch set closed and nowhere dense.  The
    shape conditions are checked exhaustively up to ``depth_bound``.
    """

    member: Callable[[Seq], bool]
    branching: int
    depth_bound: int = 6

    def check_shape(self) -> None:
        if self.branching < 1:
            raise ValueError("branching bound must be positive")
        alphabet = range(self.branching + 1)
        for length in range(1, self.depth_bound + 1):
            for w in product(alphabet, repeat=length):
                if not self.member(w):
                    continue
                if any(x >= self.branching for x in w):
                    raise ValueError(f"member {w} breaks the branching bound")
                if not self.member(w[:-1]):
                    raise ValueError(f"tree not downward closed at {w}")

    @staticmethod
    def full(branching: int, depth_bound: int = 6) -> "NdTree":
        return NdTree(lambda w: all(x < branching for x in w), branching,
                      depth_bound)

    @staticmethod
    def level_capped(caps: Seq, depth_bound: int = 6) -> "NdTree":
        """Members bounded per level by ``caps`` (last cap repeats)."""
        if not caps or any(c < 1 for c in caps):
            raise ValueError("caps must be positive")

        def member(w: Seq) -> bool:
            return all(w[i] < caps[min(i, len(caps) - 1)] for i in range(len(w)))

        return NdTree(member, max(caps), depth_bound)


def nd_witness(u: Expr, tree: NdTree) -> Seq:
    """A cylinder inside ``u`` whose branches all leave the tree.

    The witness is extended by one value at least the branching bound (and
    fresh to the mentions of ``u``): the resulting stem is not a tree
    member, and downward closure keeps every branch through it out of the
    tree's branch set.
    """
    w = witness_cylinder(u)
    if w is None:
        raise EmptySetError("cannot avoid a tree inside the empty set")
    ms = mentions(u)
    used = {m[len(w)] for m in ms if len(m) > len(w)}
    v = tree.branching
    while v in used:
        v += 1
    return w + (v,)
