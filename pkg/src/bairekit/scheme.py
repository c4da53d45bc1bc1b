"""Lazy Souslin schemes over space models, with finite-window verification.

A scheme is a total memoized rule from finite sequences to open sets of a
space model.  Infinitary scheme predicates (covering, partitioning, strict
branches) are checked on a window: all index sequences up to a depth whose
entries stay below a child budget.  Checks report three-valued statuses,
because inclusion into an infinite union of children is only one-sided
evidence at any finite budget.

Scheme memo tables are not synchronized; confine a scheme to one task, or
share only after the nodes of interest have been evaluated.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional

from .cylinder import Atom, mentions
from .seq import BranchRule, Seq, restrict, seq_at, seq_to_text
from .spaces import BAIRE, BaireSpaceModel, SpaceModel

VERIFIED = "verified"
VIOLATED = "violated"
UNRESOLVED = "unresolved"
BREACH = "breach"


@dataclass(frozen=True)
class Window:
    """The finite verification surface: depth bound and child budget."""

    depth: int
    breadth: int

    def __post_init__(self):
        if self.depth < 0 or self.breadth < 1:
            raise ValueError(f"bad window {self}")

    def nodes(self) -> Iterator[Seq]:
        for length in range(self.depth + 1):
            yield from product(range(self.breadth), repeat=length)

    def node_count(self) -> int:
        if self.breadth == 1:
            return self.depth + 1
        return (self.breadth ** (self.depth + 1) - 1) // (self.breadth - 1)

    def to_json(self) -> dict:
        return {"depth": self.depth, "breadth": self.breadth}


@dataclass
class ReportEntry:
    key: str
    status: str
    detail: str = ""


class Report:
    """A keyed list of per-check statuses; pass means no hard violation."""

    def __init__(self, name: str):
        self.name = name
        self.entries: list[ReportEntry] = []

    def add(self, key: str, status: str, detail: str = "") -> None:
        self.entries.append(ReportEntry(key, status, detail))

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    def with_status(self, status: str) -> list[ReportEntry]:
        return [e for e in self.entries if e.status == status]

    @property
    def violations(self) -> list[ReportEntry]:
        return self.with_status(VIOLATED)

    @property
    def breaches(self) -> list[ReportEntry]:
        return self.with_status(BREACH)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "counts": {s: len(self.with_status(s))
                       for s in (VERIFIED, VIOLATED, UNRESOLVED, BREACH)},
            "entries": [{"key": e.key, "status": e.status, "detail": e.detail}
                        for e in self.entries],
        }

    def __str__(self) -> str:
        c = self.to_json()["counts"]
        return (f"{self.name}: {'ok' if self.ok else 'VIOLATED'} "
                f"(verified {c[VERIFIED]}, violated {c[VIOLATED]}, "
                f"unresolved {c[UNRESOLVED]}, breach {c[BREACH]})")


class Scheme:
    """A lazy, memoized total rule from index sequences to open sets."""

    def __init__(self, space: SpaceModel, rule: Callable[[Seq], object],
                 label: str = "scheme"):
        self.space = space
        self.rule = rule
        self.label = label
        self.meta: dict = {}
        self._memo: dict[Seq, object] = {}

    def node(self, a: Seq):
        try:
            return self._memo[a]
        except KeyError:
            value = self.rule(a)
            return self._memo.setdefault(a, value)

    def child(self, a: Seq, n: int):
        return self.node(a + (n,))


def standard_scheme() -> Scheme:
    """The scheme of basic cylinders themselves, over the Baire model."""
    return Scheme(BAIRE, lambda a: Atom(a), label="standard")


# -- window checks ------------------------------------------------------------

def check_covers(scheme: Scheme, window: Window) -> Report:
    """Children inside their node (exact), node inside the finite child
    union (one-sided: verified or unresolved), and root equal to the space.
    """
    rep = Report("covers")
    space = scheme.space
    root = scheme.node(())
    if space.equal(root, space.whole()):
        rep.add("root", VERIFIED, "root equals the whole space")
    else:
        rep.add("root", VIOLATED, "root differs from the whole space")
    for a in window.nodes():
        va = scheme.node(a)
        key = seq_to_text(a)
        broken = False
        union = None
        for n in range(window.breadth):
            child = scheme.child(a, n)
            if not space.subset(child, va):
                rep.add(f"{key}:{n}", VIOLATED, "child escapes its node")
                broken = True
            union = child if union is None else space.union(union, child)
        if broken:
            continue
        if space.subset(va, union):
            rep.add(key, VERIFIED)
        else:
            rep.add(key, UNRESOLVED, "node not covered by budgeted children")
    return rep


def check_partitions(scheme: Scheme, window: Window) -> Report:
    """Pairwise disjointness of budgeted children, on top of the cover check."""
    rep = check_covers(scheme, window)
    rep.name = "partitions"
    space = scheme.space
    for a in window.nodes():
        key = seq_to_text(a)
        children = [scheme.child(a, n) for n in range(window.breadth)]
        for n in range(window.breadth):
            for m in range(n + 1, window.breadth):
                meet = space.intersect(children[n], children[m])
                if not space.is_empty(meet):
                    rep.add(f"{key}:{n}^{m}", VIOLATED,
                            "children overlap")
    return rep


def fruit_prefix(scheme: Scheme, p: BranchRule, n: int):
    """Intersection of the first ``n + 1`` node values along the branch."""
    space = scheme.space
    out = scheme.node(())
    for k in range(1, n + 1):
        out = space.intersect(out, scheme.node(restrict(p, k)))
    return out


@dataclass(frozen=True)
class BranchProbe:
    nonempty: bool
    precision: int


def strict_branch_probe(scheme: Scheme, p: BranchRule, n: int) -> BranchProbe:
    """Evidence toward a singleton fruit along ``p``: nonemptiness of the
    depth-``n`` fruit and the length of the longest single cylinder known
    to contain it.  Never claims strictness outright.
    """
    if not isinstance(scheme.space, BaireSpaceModel):
        raise TypeError("strict-branch probing is defined over the Baire model")
    from . import cylinder as cy
    fruit = fruit_prefix(scheme, p, n)
    if cy.is_empty(fruit):
        return BranchProbe(False, 0)
    c: Seq = ()
    ms = mentions(fruit)
    while True:
        pos = len(c)
        values = sorted({m[pos] for m in ms if len(m) > pos and m[:pos] == c})
        ext = next((v for v in values if cy.subset(fruit, Atom(c + (v,)))), None)
        if ext is None:
            return BranchProbe(True, len(c))
        c += (ext,)


class EmptyTargetError(ValueError):
    pass


def pi_net_probe(scheme: Scheme, root: Seq, target, budget: int) -> Optional[Seq]:
    """First node at or below ``root`` that is nonempty and inside ``target``.

    Candidates are tried in the canonical fair order of extensions; this
    is a semi-decision bounded by the budget.
    """
    space = scheme.space
    if space.is_empty(space.intersect(target, scheme.node(root))):
        raise EmptyTargetError("target misses the subspace")
    for k in range(budget):
        b = root + seq_at(k)
        vb = scheme.node(b)
        if not space.is_empty(vb) and space.subset(vb, target):
            return b
    return None


# -- index relabeling ---------------------------------------------------------

def compose_index(g: Callable[[int], int], a: Seq) -> Seq:
    return tuple(g(x) for x in a)


def relabel(scheme: Scheme, g: Callable[[int], int]) -> Scheme:
    """The scheme whose node at ``a`` is the base node at ``g`` applied
    entrywise to ``a``; lazy and memoized independently of the base."""
    return Scheme(scheme.space, lambda a: scheme.node(compose_index(g, a)),
                  label=f"{scheme.label}^g")


def preimage_table(g: Callable[[int], int], values: int,
                   bound: int) -> dict[int, int]:
    """Least preimage under ``g`` for each value below ``values``, searching
    arguments below ``bound``; missing values are simply absent."""
    table: dict[int, int] = {}
    for n in range(bound):
        v = g(n)
        if v < values and v not in table:
            table[v] = n
            if len(table) == values:
                break
    return table


def check_relabel_identities(scheme: Scheme, g: Callable[[int], int],
                             window: Window,
                             preimage_bound: int | None = None) -> Report:
    """Finite instances of the relabeling identities.

    (a) every budgeted child index of the relabeled node comes from a
    relabeled child index and vice versa (needs preimages below the bound;
    missing preimages are reported as a precondition breach);
    (b) the budgeted partial unions of children mutually include, once the
    budgets are matched through ``g`` and its preimages;
    (c) partial fruit intersections along branches agree entrywise.
    """
    rep = Report("relabel-identities")
    space = scheme.space
    bound = preimage_bound if preimage_bound is not None else 4 * window.breadth + 16
    pre = preimage_table(g, window.breadth, bound)
    for v in range(window.breadth):
        if v not in pre:
            rep.add(f"preimage:{v}", BREACH,
                    f"no argument below {bound} maps to {v}")
    surjective = len(pre) == window.breadth

    for a in window.nodes():
        key = seq_to_text(a)
        ga = compose_index(g, a)
        wrong = next((n for n in range(window.breadth)
                      if not space.equal(scheme.node(compose_index(g, a + (n,))),
                                         scheme.node(ga + (g(n),)))), None)
        if wrong is None:
            rep.add(f"index:{key}", VERIFIED)
        else:
            rep.add(f"index:{key}", VIOLATED, f"child {wrong} disagrees")
        if not surjective:
            continue
        m = window.breadth
        relabeled = [scheme.node(compose_index(g, a + (n,))) for n in range(m)]
        direct_hi = 1 + max(g(n) for n in range(m))
        direct = [scheme.node(ga + (k,)) for k in range(max(m, direct_hi))]
        q = _fold_union(space, relabeled)
        ok1 = space.subset(q, _fold_union(space, direct[:direct_hi]))
        n_hi = 1 + max(pre[v] for v in range(m))
        q_big = _fold_union(space, [scheme.node(compose_index(g, a + (n,)))
                                    for n in range(n_hi)])
        ok2 = space.subset(_fold_union(space, direct[:m]), q_big)
        if ok1 and ok2:
            rep.add(f"union:{key}", VERIFIED)
        else:
            rep.add(f"union:{key}", VIOLATED,
                    f"partial unions fail mutual inclusion ({ok1}, {ok2})")

    for v in range(window.breadth):
        q = BranchRule.constant(v)
        one = scheme.node(())
        two = scheme.node(())
        for j in range(1, window.depth + 1):
            one = space.intersect(one, scheme.node(compose_index(g, restrict(q, j))))
            two = space.intersect(two, scheme.node(restrict(
                BranchRule(lambda i, _q=q: g(_q(i))), j)))
        if space.equal(one, two):
            rep.add(f"fruit:const{v}", VERIFIED)
        else:
            rep.add(f"fruit:const{v}", VIOLATED)
    return rep


def _fold_union(space: SpaceModel, items: list):
    out = items[0]
    for o in items[1:]:
        out = space.union(out, o)
    return out


def dense_in_itself_probe(scheme: Scheme, x, window: Window) -> Report:
    """At every window node containing ``x``, look for two distinct children
    containing ``x`` within the budget.  A miss is unresolved (the budget
    is finite), not a violation."""
    rep = Report("dense-in-itself")
    space = scheme.space
    if not any(space.contains(scheme.node(a), x) for a in window.nodes()):
        rep.add("pre", BREACH, "point not seen in any window node")
        return rep
    for a in window.nodes():
        if not space.contains(scheme.node(a), x):
            continue
        hits = [n for n in range(window.breadth)
                if space.contains(scheme.child(a, n), x)]
        key = seq_to_text(a)
        if len(hits) >= 2:
            rep.add(key, VERIFIED, f"children {hits[0]},{hits[1]}")
        else:
            rep.add(key, UNRESOLVED, "fewer than two children found in budget")
    return rep


def branch_nodes(scheme: Scheme, x, window: Window) -> list[Seq]:
    """Window nodes whose value contains ``x``; prefixes of every true
    branch through ``x`` lie in this set."""
    space = scheme.space
    return [a for a in window.nodes() if space.contains(scheme.node(a), x)]


def dump_scheme(scheme: Scheme, window: Window) -> dict:
    nodes = {}
    for a in window.nodes():
        nodes[seq_to_text(a)] = scheme.space.open_to_json(scheme.node(a))
    return {"space": scheme.space.tag, "label": scheme.label,
            "window": window.to_json(), "nodes": nodes}
