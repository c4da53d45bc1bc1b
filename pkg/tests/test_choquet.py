import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bairekit.choquet import (ExtractionError, IllegalMoveError, copy_strategy,
                              cylinder_strategy, extract_schemes,
                              modify_strategy, remove_redundant, replay_branch,
                              run_game, scripted_player, transcript_json,
                              validate_history)
from bairekit.cylinder import Atom, FULL, cyl, subset
from bairekit.scheme import UNRESOLVED, Window, check_covers
from bairekit.spaces import BAIRE, FiniteSpaceModel


def chain_space():
    return FiniteSpaceModel([0, 1, 2], [[], [2], [1, 2], [0, 1, 2]])


def test_remove_redundant_paper_history():
    sp = chain_space()
    x, y, z = sp.whole(), sp.mask_of([1, 2]), sp.mask_of([2])
    history = ((x, x), (x, x), (y, y), (y, y), (z, z))
    assert remove_redundant(sp, history) == ((y, y), (z, z))


def test_remove_redundant_zero_pair_and_fixed_points():
    sp = chain_space()
    x, y = sp.whole(), sp.mask_of([1, 2])
    assert remove_redundant(sp, ((x, x),)) == ()
    untouched = ((x, y), (y, y))
    # second pair repeats the first reply, so only it goes
    assert remove_redundant(sp, untouched) == ((x, y),)
    strict = ((x, y), (sp.mask_of([2]), sp.mask_of([2])))
    assert remove_redundant(sp, strict) == strict


def test_remove_redundant_validates():
    sp = chain_space()
    x, z = sp.whole(), sp.mask_of([2])
    with pytest.raises(ValueError):
        remove_redundant(sp, ((z, x),))  # reply escapes the move
    with pytest.raises(ValueError):
        remove_redundant(sp, ((x, 0),))  # empty reply
    with pytest.raises(ValueError):
        remove_redundant(sp, ((x, sp.mask_of([0])),))  # not open


@st.composite
def legal_histories(draw):
    sp = chain_space()
    declining = [sp.whole(), sp.mask_of([1, 2]), sp.mask_of([2])]
    history = []
    level = 0
    for _ in range(draw(st.integers(0, 5))):
        u_level = draw(st.integers(level, 2))
        v_level = draw(st.integers(u_level, 2))
        history.append((declining[u_level], declining[v_level]))
        level = v_level
    return sp, tuple(history)


@given(legal_histories())
@settings(max_examples=200)
def test_remove_redundant_idempotent(case):
    sp, history = case
    once = remove_redundant(sp, history)
    assert remove_redundant(sp, once) == once


def test_modified_clauses():
    sp = chain_space()
    x, y, z = sp.whole(), sp.mask_of([1, 2]), sp.mask_of([2])
    seen = []

    def recording(space, history, u):
        seen.append((history, u))
        return u

    modified = modify_strategy(recording)
    assert modified(sp, (), x) == x and seen == []
    assert modified(sp, (), y) == y and seen == [((), y)]
    seen.clear()
    history = ((x, x), (y, y))
    assert modified(sp, history, y) == y and seen == []
    assert modified(sp, history, z) == z
    assert seen == [((((y, y),)), z)]  # deflated history reached the base rule


def test_modified_equals_base_on_redundancy_free_play():
    sp = chain_space()
    base = copy_strategy()
    modified = modify_strategy(base)
    x, y, z = sp.whole(), sp.mask_of([1, 2]), sp.mask_of([2])
    history = ()
    for u in (y, z):
        assert modified(sp, history, u) == base(sp, history, u)
        history += ((u, u),)


def test_run_game_sierpinski_copy():
    sp = FiniteSpaceModel.sierpinski()
    one = sp.mask_of([1])
    result = run_game(sp, scripted_player([one] * 4), copy_strategy(), 4)
    assert result.winner == "II" and result.decided
    assert result.final_set == one


def test_run_game_flags_illegal_first_player():
    sp = FiniteSpaceModel.sierpinski()
    one, whole = sp.mask_of([1]), sp.whole()
    with pytest.raises(IllegalMoveError) as err:
        run_game(sp, scripted_player([one, whole]), copy_strategy(), 2)
    assert err.value.player == "I"
    with pytest.raises(IllegalMoveError) as err:
        run_game(sp, scripted_player([0]), copy_strategy(), 1)
    assert err.value.player == "I"


def test_run_game_flags_illegal_second_player():
    sp = FiniteSpaceModel.sierpinski()

    def rogue(space, history, u):
        return space.whole()

    with pytest.raises(IllegalMoveError) as err:
        run_game(sp, scripted_player([sp.mask_of([1])]), rogue, 1)
    assert err.value.player == "II"


def test_cylinder_strategy_growth():
    moves = [FULL, cyl(0, 0), cyl(0, 0, 0, 5)]
    result = run_game(BAIRE, scripted_player(moves), cylinder_strategy(), 3)
    assert not result.decided and result.winner is None
    lengths = [len(v.entries) for _u, v in result.history]
    assert lengths == sorted(lengths) and lengths[0] >= 1
    for k, (u, v) in enumerate(result.history):
        assert len(v.entries) >= k + 1 and subset(v, u)


def test_cylinder_strategy_reply_extends_move():
    reply = cylinder_strategy()(BAIRE, ((FULL, FULL), (FULL, FULL)), cyl(3))
    assert isinstance(reply, Atom)
    assert reply.entries[:1] == (3,) and len(reply.entries) >= 3


def test_transcript_json():
    sp = FiniteSpaceModel.sierpinski()
    one = sp.mask_of([1])
    result = run_game(sp, scripted_player([one]), copy_strategy(), 1)
    assert transcript_json(sp, result.history) == [
        {"player": "I", "set": [1]},
        {"player": "II", "set": [1]},
    ]


def test_extract_one_point_space():
    sp = FiniteSpaceModel([5], [[], [5]])
    moves, replies = extract_schemes(sp, copy_strategy())
    for a in Window(2, 3).nodes():
        assert moves.node(a) == sp.whole()
        assert replies.node(a) == sp.whole()


def test_extract_sierpinski_hand_replay():
    sp = FiniteSpaceModel.sierpinski()
    moves, replies = extract_schemes(sp, copy_strategy())
    x, one = sp.whole(), sp.mask_of([1])
    assert replies.node(()) == x
    assert moves.node((0,)) == x and replies.node((0,)) == x
    assert moves.node((1,)) == one and replies.node((1,)) == one


def test_extract_branch_history_is_legal_run():
    sp = chain_space()
    moves, replies = extract_schemes(sp, copy_strategy())
    for branch in [(0, 1), (1, 2), (2, 0), (1, 1, 1)]:
        history = tuple((moves.node(branch[: k]), replies.node(branch[: k]))
                        for k in range(len(branch) + 1))
        validate_history(sp, history)
        assert replay_branch(sp, copy_strategy(), moves, replies, branch)


def test_extract_children_enumerate_pi_base():
    sp = chain_space()
    moves, replies = extract_schemes(sp, copy_strategy())
    for a in [(), (1,), (2, 1)]:
        va = replies.node(a)
        opens = sp.nonempty_opens_inside(va)
        for u in opens:
            assert any(sp.subset(replies.child(a, m), u)
                       for m in range(len(opens) + 1))


def test_extract_covers_verified_on_finite_spaces():
    sp = chain_space()
    _moves, replies = extract_schemes(sp, copy_strategy())
    rep = check_covers(replies, Window(2, 4))
    assert rep.ok and not rep.with_status(UNRESOLVED)


def test_extract_rejects_rogue_strategy():
    sp = FiniteSpaceModel.sierpinski()

    def rogue(space, history, u):
        return 0  # empty reply is never legal

    _moves, replies = extract_schemes(sp, rogue)
    with pytest.raises(ExtractionError):
        replies.node((1,))


def test_extract_baire_replay():
    moves, replies = extract_schemes(BAIRE, cylinder_strategy())
    branch = (2, 1, 3)
    for k in range(len(branch) + 1):
        node = replies.node(branch[: k])
        assert node is FULL or (isinstance(node, Atom)
                                and len(node.entries) >= k)
    assert replay_branch(BAIRE, cylinder_strategy(), moves, replies, branch)
