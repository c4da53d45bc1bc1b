from itertools import product

import pytest

from bairekit.scheme import Scheme, VIOLATED, Window, check_covers
from bairekit.selector import (PrefixMap, SigmaBasic, StrictnessError,
                               basic_intersect, basic_is_empty,
                               check_image_identity, check_selector_identity,
                               fiber_stem, pi_space_probe, preset_maps,
                               pushforward_scheme, trivial_selector)
from bairekit.seq import BranchRule

TWO = preset_maps()["two"]       # depth 1: stem (0,) -> 0, anything else -> 1
THREE = preset_maps()["three"]   # depth 2 over {0,1}


def test_prefix_map_validation():
    with pytest.raises(ValueError):
        PrefixMap.build([0, 1, 2], 1, (0,), {(0,): 0}, 1)  # misses point 2
    with pytest.raises(ValueError):
        PrefixMap((0, 1), 1, (0,), (((1,), 0),), 1)  # stem off the alphabet


def test_prefix_map_resolution_and_image():
    assert TWO.image(()) == {0, 1}
    assert TWO.image((0,)) == {0}
    assert TWO.image((7,)) == {1}
    assert TWO.resolve((0, 5, 5)) == 0
    assert TWO.apply(BranchRule.constant(3)) == 1
    assert THREE.image((1,)) == {0, 1, 2}
    assert THREE.image((1, 0)) == {2}
    assert THREE.image((1, 0, 9)) == {2}


def test_prefix_map_json_round_trip():
    again = PrefixMap.from_json(THREE.to_json())
    assert again == THREE


def test_pushforward_scheme_nodes():
    sch = pushforward_scheme(TWO)
    sp = sch.space
    assert sp.points_of(sch.node(())) == (0, 1)
    assert sp.points_of(sch.node((0,))) == (0,)
    assert sp.points_of(sch.node((7,))) == (1,)
    for a in Window(2, 3).nodes():
        for n in range(3):
            assert sp.subset(sch.node(a + (n,)), sch.node(a))


def test_pushforward_covers_verified():
    rep = check_covers(pushforward_scheme(THREE), Window(2, 3))
    assert rep.ok and not rep.with_status("unresolved")


def test_selector_identity_check():
    sch = pushforward_scheme(TWO)
    assert check_selector_identity(TWO, sch, Window(2, 3)).ok

    sp = sch.space
    def enlarged(a):
        mask = sp.mask_of(TWO.image(a))
        return sp.whole() if a == (0,) else mask

    rep = check_selector_identity(TWO, Scheme(sp, enlarged), Window(1, 2))
    assert any(e.status == VIOLATED and e.key == "0" for e in rep.entries)


def test_image_identity_examples():
    whole = frozenset(THREE.points)
    assert check_image_identity(THREE, whole, (0,))
    assert check_image_identity(THREE, frozenset(), (1, 1))
    for u_bits in range(8):
        u = frozenset(p for p in range(3) if u_bits >> p & 1)
        for a in [(), (0,), (1, 0), (2,), (0, 1, 1)]:
            assert check_image_identity(THREE, u, a)


def test_basic_intersection():
    u = frozenset({1})
    whole = frozenset(TWO.points)
    got = basic_intersect(SigmaBasic(u, ()), SigmaBasic(whole, (1,)))
    assert got == SigmaBasic(u, (1,))
    assert basic_intersect(SigmaBasic(u, (0,)), SigmaBasic(u, (1,))) is None


def test_basic_intersection_matches_pointwise_membership():
    import random

    pm = preset_maps()["three"]
    rng = random.Random(5)
    stems = [t for ln in range(3) for t in product(range(3), repeat=ln)]
    letters = tuple(sorted(set(pm.alphabet) | {2, 3}))

    def pick_basic():
        u = frozenset(p for p in pm.points if rng.random() < 0.6)
        return SigmaBasic(u, rng.choice(stems))

    for _ in range(60):
        b1, b2 = pick_basic(), pick_basic()
        meet = basic_intersect(b1, b2)
        for w in product(letters, repeat=3):
            inside = all(w[: len(b.stem)] == b.stem and pm.resolve(w) in b.u
                         for b in (b1, b2))
            got = (meet is not None and w[: len(meet.stem)] == meet.stem
                   and pm.resolve(w) in meet.u)
            assert got == inside, (b1, b2, w)


def test_pi_space_probe_examples():
    assert pi_space_probe(TWO, SigmaBasic(frozenset({1}), ()), 50) == (1,)
    whole = frozenset(TWO.points)
    assert pi_space_probe(TWO, SigmaBasic(whole, (0, 1)), 50) == (0, 1)
    with pytest.raises(ValueError):
        pi_space_probe(TWO, SigmaBasic(frozenset(), ()), 50)
    nontrivial = SigmaBasic(frozenset({0}), ())
    assert pi_space_probe(TWO, nontrivial, 1) is None  # budget 0 extensions


def test_pi_space_probe_hits_every_preset_basic():
    for name, pm in preset_maps().items():
        stems = [t for ln in range(3) for t in product(range(3), repeat=ln)]
        for bits in range(1 << len(pm.points)):
            u = frozenset(p for p in pm.points if bits >> p & 1)
            for a in stems:
                basic = SigmaBasic(u, a)
                if basic_is_empty(pm, basic):
                    continue
                hit = pi_space_probe(pm, basic, 50)
                assert hit is not None, (name, sorted(u), a)
                assert hit[: len(a)] == a and pm.image(hit) <= u


def test_fiber_stems_cover_window():
    for pm in preset_maps().values():
        for a in [t for ln in range(3) for t in product(range(3), repeat=ln)]:
            for x in pm.image(a):
                stem = fiber_stem(pm, a, x)
                assert stem is not None and stem[: len(a)] == a
                padded = stem + (0,) * max(0, pm.depth - len(stem))
                assert pm.resolve(padded) == x


def test_trivial_selector():
    sch = pushforward_scheme(TWO)
    select = trivial_selector(sch, 4)
    assert select(BranchRule.constant(0)) == 0
    assert select(BranchRule.constant(9)) == 1
    assert select(BranchRule.padded((0, 3), 3)) == 0

    sp = sch.space
    fat = Scheme(sp, lambda a: sp.whole())
    with pytest.raises(StrictnessError):
        trivial_selector(fat, 4)(BranchRule.constant(0))

    def clashing(a):
        return sp.mask_of([0]) if len(a) % 2 else sp.mask_of([1])

    with pytest.raises(StrictnessError):
        trivial_selector(Scheme(sp, clashing), 4)(BranchRule.constant(0))

    with pytest.raises(TypeError):
        from bairekit.scheme import standard_scheme
        trivial_selector(standard_scheme(), 4)


def test_trivial_selector_agrees_with_prefix_map():
    sch = pushforward_scheme(THREE)
    select = trivial_selector(sch, 5)
    for word in product(range(3), repeat=2):
        branch = BranchRule.padded(word, 0)
        assert select(branch) == THREE.apply(branch)
