from itertools import product

import pytest
from hypothesis import given, settings

from conftest import exprs
from bairekit.cylinder import (Atom, EMPTY, EmptySetError, FULL, NdTree,
                               Union, WindowError, contains_branch, cyl,
                               equal, is_empty, minimal_antichain, nd_witness,
                               strict_witness, subset, trace_window,
                               witness_cylinder)
from bairekit.seq import BranchRule, is_prefix


def oracle_nonempty(e, depth=3, breadth=3):
    return bool(trace_window(e, depth, breadth))


def oracle_subset(e1, e2, depth=3, breadth=3):
    return trace_window(e1, depth, breadth) <= trace_window(e2, depth, breadth)


# -- emptiness and inclusion ---------------------------------------------------

def test_is_empty_examples():
    assert is_empty(cyl(0) & cyl(1))
    assert not is_empty(FULL - cyl(0))
    # window oracle at d=1, b=2: the only surviving word is (1,)
    e = (cyl(0) | cyl(1)) - cyl(0)
    assert trace_window(e, 1, 2) == {(1,)}
    assert not is_empty(e)


def test_subset_examples():
    assert subset(cyl(0, 1), cyl(0))
    # oracle at d=2, b=1: word (0,0) is in the left side only
    lhs, rhs = cyl(0), cyl(0) - cyl(0, 0)
    assert (0, 0) in trace_window(lhs, 2, 1) - trace_window(rhs, 2, 1)
    assert not subset(lhs, rhs)
    assert subset(EMPTY, cyl(5))


def test_contains_branch_examples():
    assert contains_branch(cyl(0, 0), BranchRule.constant(0))
    assert not contains_branch(FULL - cyl(0), BranchRule.constant(0))
    assert contains_branch(cyl(1) | cyl(2), BranchRule.constant(2))


# -- witnesses -----------------------------------------------------------------

def test_witness_examples():
    assert witness_cylinder(EMPTY) is None
    assert witness_cylinder(FULL - cyl(0)) == (1,)
    assert witness_cylinder(cyl(2)) == (2, 0)


def test_strict_witness_examples():
    assert strict_witness(EMPTY) is None
    # any proper cylinder is valid; the canonical pick extends the witness
    c = strict_witness(FULL)
    assert subset(Atom(c), FULL) and not equal(Atom(c), FULL)
    e = cyl(0) - cyl(0, 0)
    c = strict_witness(e)
    assert subset(Atom(c), e) and not equal(Atom(c), e)


@given(exprs)
@settings(max_examples=300)
def test_witness_soundness(e):
    w = witness_cylinder(e)
    if w is None:
        assert is_empty(e)
        assert not oracle_nonempty(e)
    else:
        assert subset(Atom(w), e)


@given(exprs)
@settings(max_examples=200)
def test_strict_witness_strictness(e):
    c = strict_witness(e)
    if c is not None:
        assert subset(Atom(c), e)
        assert not equal(Atom(c), e)


# -- oracle equivalence (the acceptance suite runs the larger version) ---------

@given(exprs)
@settings(max_examples=300)
def test_emptiness_matches_window_oracle(e):
    assert is_empty(e) == (not oracle_nonempty(e))


@given(exprs, exprs)
@settings(max_examples=300)
def test_subset_matches_window_oracle(e1, e2):
    assert subset(e1, e2) == oracle_subset(e1, e2)


@given(exprs)
@settings(max_examples=100)
def test_membership_matches_window_oracle(e):
    window = trace_window(e, 3, 3)
    for w in product(range(4), repeat=3):
        assert contains_branch(e, BranchRule.periodic(w)) == (w in window)


# -- boolean laws --------------------------------------------------------------

@given(exprs, exprs)
@settings(max_examples=150)
def test_de_morgan(a, b):
    assert equal(FULL - (a | b), (FULL - a) & (FULL - b))
    assert equal(FULL - (a & b), (FULL - a) | (FULL - b))


@given(exprs, exprs)
@settings(max_examples=150)
def test_absorption(a, b):
    assert equal(a & (a | b), a)
    assert equal(a | (a & b), a)


# -- minimal antichains --------------------------------------------------------

def test_antichain_examples():
    assert minimal_antichain(FULL).concrete == ((),)
    assert minimal_antichain(cyl(3)).concrete == ((3,),)
    chain = minimal_antichain(FULL - cyl(0, 2))
    assert chain.concrete == ()
    assert [(f.stem, set(f.excluded)) for f in chain.families] == \
        [((), {0}), ((0,), {2})]


def test_antichain_requires_nonempty():
    with pytest.raises(EmptySetError):
        minimal_antichain(cyl(0) & cyl(1))


@given(exprs)
@settings(max_examples=150)
def test_antichain_members_minimal_and_incomparable(e):
    if is_empty(e):
        return
    chain = minimal_antichain(e)
    members = [chain.member(i) for i in range(12)] if chain.is_infinite \
        else list(chain.concrete)
    for c in members:
        assert subset(Atom(c), e)
        if c:
            assert not subset(Atom(c[:-1]), e)
    for i, c in enumerate(members):
        for d in members[i + 1:]:
            assert not is_prefix(c, d) and not is_prefix(d, c)
    covered = None
    for c in members:
        covered = Atom(c) if covered is None else Union(covered, Atom(c))
        assert subset(covered, e)


@given(exprs)
@settings(max_examples=60)
def test_antichain_denotes_exactly_the_minimal_cylinders(e):
    # biconditional against brute-force window minimality
    if is_empty(e):
        return
    chain = minimal_antichain(e)
    candidates = [()] + [c for ln in range(1, 4)
                         for c in product(range(4), repeat=ln)]

    def inside(c):
        depth, breadth = max(3, len(c)), max(3, max(c, default=0) + 1)
        return trace_window(Atom(c), depth, breadth) <= \
            trace_window(e, depth, breadth)

    for c in candidates:
        minimal = inside(c) and not (c and inside(c[:-1]))
        assert chain.denotes(c) == minimal, c


@given(exprs)
@settings(max_examples=100)
def test_antichain_fair_enumeration(e):
    # every denoted member the families describe shows up at a finite index
    if is_empty(e):
        return
    chain = minimal_antichain(e)
    if not chain.is_infinite:
        return
    probe = [chain.member(i) for i in range(40)]
    for fam in chain.families:
        v = 0
        while v in fam.excluded:
            v += 1
        assert fam.stem + (v,) in probe or len(probe) < 40
        assert chain.denotes(fam.stem + (v,))


# -- windows -------------------------------------------------------------------

def test_trace_window_examples():
    assert trace_window(cyl(1), 2, 3) == {(1, 0), (1, 1), (1, 2), (1, 3)}
    assert trace_window(EMPTY, 2, 2) == frozenset()
    assert trace_window(FULL - cyl(0), 1, 1) == {(1,)}


def test_trace_window_guard():
    with pytest.raises(WindowError):
        trace_window(cyl(5), 2, 3)
    with pytest.raises(WindowError):
        trace_window(cyl(0, 0, 0), 2, 3)


# -- tree avoidance ------------------------------------------------------------

def test_nd_tree_shape():
    NdTree.full(2).check_shape()
    NdTree.level_capped((2, 1)).check_shape()
    ragged = NdTree(lambda w: w == (0, 0), branching=1, depth_bound=3)
    with pytest.raises(ValueError):
        ragged.check_shape()


def window_avoids_tree(c, tree, depth, breadth):
    for tail in product(range(breadth + 1), repeat=depth - len(c)):
        w = c + tail
        if all(tree.member(w[: j]) for j in range(1, len(w) + 1)):
            return False
    return True


def test_nd_witness_examples():
    zeros = NdTree.full(1)
    c = nd_witness(FULL, zeros)
    assert subset(Atom(c), FULL)
    assert not all(zeros.member(c[: j]) for j in range(1, len(c) + 1))
    c = nd_witness(cyl(0), zeros)
    assert subset(Atom(c), cyl(0))
    assert window_avoids_tree(c, zeros, max(3, len(c)) + 1, max(c) + 1)
    with pytest.raises(EmptySetError):
        nd_witness(EMPTY, zeros)
