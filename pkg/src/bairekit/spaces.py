"""Space models: the abstract topology interface and its two instances.

A space model provides the whole space, exact set predicates on its open
sets, and for every nonempty open a fair countable enumeration of a
pi-base of that open, whose element 0 is the open itself (the convention
the scheme-extraction recursion relies on).

``FiniteSpaceModel`` stores opens as bitmasks over at most 64 points and
decides everything exactly.  ``BaireSpaceModel`` uses cylinder expressions
as opens and delegates to the exact cylinder decision procedures.
"""

from __future__ import annotations

from itertools import count
from typing import Any, Iterable, Iterator

from . import cylinder
from .cylinder import Atom, Expr, Inter, Union as ExprUnion, minimal_antichain
from .grammar import expr_from_json, expr_to_text, parse_expr
from .seq import BranchRule, seq_at, unpair


class LazySeq:
    """An indexable view of an infinite iterator, materialized on demand."""

    def __init__(self, iterable: Iterable):
        self._it = iter(iterable)
        self._cache: list = []

    def __getitem__(self, i: int):
        while len(self._cache) <= i:
            self._cache.append(next(self._it))
        return self._cache[i]


class SpaceModel:
    """Abstract interface; see the two concrete models below."""

    tag = "abstract"

    def whole(self):
        raise NotImplementedError

    def is_empty(self, o) -> bool:
        raise NotImplementedError

    def is_open(self, o) -> bool:
        raise NotImplementedError

    def intersect(self, a, b):
        raise NotImplementedError

    def union(self, a, b):
        raise NotImplementedError

    def subset(self, a, b) -> bool:
        raise NotImplementedError

    def equal(self, a, b) -> bool:
        raise NotImplementedError

    def contains(self, o, x) -> bool:
        raise NotImplementedError

    def pi_base_enum(self, o) -> LazySeq:
        """Fair enumeration of nonempty opens forming a pi-base of ``o``.

        Element 0 is ``o`` itself; every listed open is nonempty and
        contained in ``o``; every nonempty open inside ``o`` contains a
        listed element.
        """
        raise NotImplementedError

    def describe(self, o) -> str:
        raise NotImplementedError

    def open_to_json(self, o):
        raise NotImplementedError

    def open_from_json(self, data):
        raise NotImplementedError


class FiniteSpaceModel(SpaceModel):
    """An explicit topology on at most 64 points; opens are bitmasks.

    Closure under union and intersection and the presence of the empty and
    whole sets are verified exhaustively at construction.
    """

    tag = "finite"

    def __init__(self, points: Iterable[int], opens: Iterable[Iterable[int] | int]):
        self.points: tuple[int, ...] = tuple(sorted(set(points)))
        if not self.points:
            raise ValueError("a space needs at least one point")
        if len(self.points) > 64:
            raise ValueError("finite model supports at most 64 points")
        self._index = {p: i for i, p in enumerate(self.points)}
        masks = set()
        for o in opens:
            masks.add(o if isinstance(o, int) else self.mask_of(o))
        self.opens: frozenset[int] = frozenset(masks)
        self._full = (1 << len(self.points)) - 1
        self._validate()

    def _validate(self) -> None:
        if 0 not in self.opens or self._full not in self.opens:
            raise ValueError("opens must contain the empty set and the whole set")
        for a in self.opens:
            if a & ~self._full:
                raise ValueError(f"open {a:b} mentions unknown points")
            for b in self.opens:
                if a | b not in self.opens or a & b not in self.opens:
                    raise ValueError("opens not closed under union/intersection")

    def mask_of(self, pts: Iterable[int]) -> int:
        m = 0
        for p in pts:
            if p not in self._index:
                raise ValueError(f"unknown point {p!r}")
            m |= 1 << self._index[p]
        return m

    def points_of(self, mask: int) -> tuple[int, ...]:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def whole(self) -> int:
        return self._full

    def is_empty(self, o: int) -> bool:
        return o == 0

    def is_open(self, o) -> bool:
        return isinstance(o, int) and o in self.opens

    def intersect(self, a: int, b: int) -> int:
        return a & b

    def union(self, a: int, b: int) -> int:
        return a | b

    def subset(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def equal(self, a: int, b: int) -> bool:
        return a == b

    def contains(self, o: int, x: int) -> bool:
        return bool(o >> self._index[x] & 1)

    def nonempty_opens_inside(self, o: int) -> list[int]:
        return sorted(m for m in self.opens if m and m & ~o == 0)

    def pi_base_enum(self, o: int) -> LazySeq:
        if o == 0:
            raise ValueError("no pi-base of the empty set")
        tail = [m for m in self.nonempty_opens_inside(o) if m != o]
        cycle = [o] + tail

        def gen() -> Iterator[int]:
            while True:
                yield from cycle

        return LazySeq(gen())

    def describe(self, o: int) -> str:
        return "{" + ",".join(str(p) for p in self.points_of(o)) + "}"

    def open_to_json(self, o: int) -> list[int]:
        return list(self.points_of(o))

    def open_from_json(self, data: Any) -> int:
        if not isinstance(data, list):
            raise ValueError(f"finite open must be a point list: {data!r}")
        return self.mask_of(data)

    def to_json(self) -> dict:
        return {"points": list(self.points),
                "opens": [list(self.points_of(m)) for m in sorted(self.opens)]}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteSpaceModel":
        if not isinstance(data, dict) or "points" not in data or "opens" not in data:
            raise ValueError("space file must carry 'points' and 'opens'")
        return cls(data["points"], data["opens"])

    @classmethod
    def sierpinski(cls) -> "FiniteSpaceModel":
        return cls([0, 1], [[], [1], [0, 1]])

    @classmethod
    def discrete(cls, n: int) -> "FiniteSpaceModel":
        pts = range(n)
        return cls(pts, [m for m in range(1 << n)])


class BaireSpaceModel(SpaceModel):
    """The Baire space with cylinder expressions as its open sets."""

    tag = "baire"

    def whole(self) -> Expr:
        return cylinder.FULL

    def is_empty(self, o: Expr) -> bool:
        return cylinder.is_empty(o)

    def is_open(self, o) -> bool:
        return isinstance(o, Expr)

    def intersect(self, a: Expr, b: Expr) -> Expr:
        return Inter(a, b)

    def union(self, a: Expr, b: Expr) -> Expr:
        return ExprUnion(a, b)

    def subset(self, a: Expr, b: Expr) -> bool:
        return cylinder.subset(a, b)

    def equal(self, a: Expr, b: Expr) -> bool:
        return cylinder.equal(a, b)

    def contains(self, o: Expr, x: BranchRule) -> bool:
        return cylinder.contains_branch(o, x)

    def pi_base_enum(self, o: Expr) -> LazySeq:
        """All cylinders inside ``o``: fair extensions of its minimal antichain."""
        if cylinder.is_empty(o):
            raise ValueError("no pi-base of the empty set")

        def gen() -> Iterator[Expr]:
            yield o
            chain = minimal_antichain(o)
            if chain.is_infinite:
                split = unpair
            else:
                width = len(chain.concrete)
                split = lambda k: (k % width, k // width)
            for k in count():
                i, j = split(k)
                candidate = Atom(chain.member(i) + seq_at(j))
                if not cylinder.equal(candidate, o):
                    yield candidate

        return LazySeq(gen())

    def describe(self, o: Expr) -> str:
        return expr_to_text(o)

    def open_to_json(self, o: Expr) -> str:
        return expr_to_text(o)

    def open_from_json(self, data: Any) -> Expr:
        if isinstance(data, str):
            return parse_expr(data)
        return expr_from_json(data)


BAIRE = BaireSpaceModel()


def all_topologies(n: int) -> list[list[int]]:
    """Every topology on ``n`` labelled points, as sorted lists of masks."""
    if not 1 <= n <= 5:
        raise ValueError("exhaustive enumeration supported for 1..5 points")
    full = (1 << n) - 1
    optional = [m for m in range(full + 1) if m not in (0, full)]
    out: list[list[int]] = []
    for bits in range(1 << len(optional)):
        fam = {0, full}
        for i, m in enumerate(optional):
            if bits >> i & 1:
                fam.add(m)
        if _closed_family(fam):
            out.append(sorted(fam))
    return out


def _closed_family(fam: set[int]) -> bool:
    members = sorted(fam)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in fam or a & b not in fam:
                return False
    return True
