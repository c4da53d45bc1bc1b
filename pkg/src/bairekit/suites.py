"""Named verification suites, shared by the command line and the test rig.

Every suite is deterministic given its seed and window, reports per-check
statuses through the common report type, and passes exactly when it
records no hard violation and no precondition breach.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional

from . import cylinder as cy
from .choquet import (copy_strategy, cylinder_strategy, extract_schemes,
                      modify_strategy, remove_redundant, replay_branch)
from .cylinder import Atom, Diff, EMPTY, Expr, FULL, Inter, NdTree, Union
from .grammar import expr_to_text
from .lusin import build_lusin, check_lusin_conditions, standard_base
from .scheme import (BREACH, Report, Scheme, UNRESOLVED, VERIFIED, VIOLATED,
                     Window, check_covers, dump_scheme,
                     check_relabel_identities, dense_in_itself_probe,
                     pi_net_probe, relabel, standard_scheme)
from .selector import (PrefixMap, SigmaBasic, basic_is_empty,
                       check_image_identity, check_selector_identity,
                       pi_space_probe, preset_maps, pushforward_scheme)
from .seq import BranchRule, Seq, seq_to_text
from .spaces import BAIRE, FiniteSpaceModel, all_topologies

SUITES = ("cylinders-oracle", "schemes-vg", "lusin", "choquet-finite",
          "choquet-extract", "selectors")

MAX_DEPTH = 8
MAX_BREADTH = 16
MAX_WINDOW_NODES = 500_000


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    suite: str
    depth: Optional[int] = None
    breadth: Optional[int] = None
    seed: int = 0
    space_path: Optional[str] = None

    def window(self, default_depth: int, default_breadth: int) -> Window:
        d = self.depth if self.depth is not None else default_depth
        m = self.breadth if self.breadth is not None else default_breadth
        if not 0 <= d <= MAX_DEPTH:
            raise ConfigError(f"depth {d} out of range 0..{MAX_DEPTH}")
        if not 1 <= m <= MAX_BREADTH:
            raise ConfigError(f"breadth {m} out of range 1..{MAX_BREADTH}")
        w = Window(d, m)
        if w.node_count() > MAX_WINDOW_NODES:
            raise ConfigError(f"window {w} has too many nodes")
        return w


# -- random generators --------------------------------------------------------

ATOM_POOL: list[Seq] = [tuple(t) for ln in range(4)
                        for t in product(range(3), repeat=ln)]


def random_expr(rng: random.Random, max_atoms: int = 4) -> Expr:
    """A random cylinder expression with mentions inside the oracle window."""
    leaves = rng.randint(1, max_atoms)
    exprs: list[Expr] = []
    for _ in range(leaves):
        roll = rng.random()
        if roll < 0.05:
            exprs.append(EMPTY)
        elif roll < 0.10:
            exprs.append(FULL)
        else:
            exprs.append(Atom(rng.choice(ATOM_POOL)))
    while len(exprs) > 1:
        i = rng.randrange(len(exprs) - 1)
        op = rng.choice((Union, Inter, Diff))
        exprs[i: i + 2] = [op(exprs[i], exprs[i + 1])]
    return exprs[0]


# -- suite: cylinders-oracle --------------------------------------------------

def _oracle_subset(e1: Expr, e2: Expr, depth: int, breadth: int) -> bool:
    return cy.trace_window(e1, depth, breadth) <= cy.trace_window(e2, depth, breadth)


def _grid_exprs() -> list[Expr]:
    atoms = [Atom(t) for ln in range(3) for t in product(range(2), repeat=ln)]
    ops = (Union, Inter, Diff)
    single = [op(a, b) for op in ops for a in atoms for b in atoms]
    small = atoms[:4]
    double = [op2(op1(a, b), c)
              for op1 in ops for op2 in ops
              for a in small for b in small for c in small]
    return atoms + single + double


def suite_cylinders_oracle(cfg: RunConfig) -> list[Report]:
    rng = random.Random(cfg.seed)
    rep = Report("cylinders-oracle")
    d, b = 3, 3

    exprs = _grid_exprs()
    exprs += [random_expr(rng) for _ in range(500)]
    empty_bad = inclusion_bad = member_bad = 0
    for i, e in enumerate(exprs):
        window = cy.trace_window(e, d, b)
        if cy.is_empty(e) != (not window):
            empty_bad += 1
            rep.add(f"emptiness:{i}", VIOLATED, expr_to_text(e))
        if i + 1 < len(exprs):
            other = exprs[i + 1]
            if cy.subset(e, other) != _oracle_subset(e, other, d, b):
                inclusion_bad += 1
                rep.add(f"inclusion:{i}", VIOLATED,
                        f"{expr_to_text(e)} vs {expr_to_text(other)}")
    words = list(product(range(b + 1), repeat=d))
    for i in rng.sample(range(len(exprs)), 60):
        e = exprs[i]
        window = cy.trace_window(e, d, b)
        for w in words:
            if cy.contains_branch(e, BranchRule.periodic(w)) != (w in window):
                member_bad += 1
                rep.add(f"membership:{i}", VIOLATED,
                        f"{expr_to_text(e)} at {w}")
    rep.add("emptiness", VERIFIED if not empty_bad else VIOLATED,
            f"{len(exprs)} expressions against the window oracle")
    rep.add("inclusion", VERIFIED if not inclusion_bad else VIOLATED,
            f"{len(exprs) - 1} pairs against the window oracle")
    rep.add("membership", VERIFIED if not member_bad else VIOLATED,
            "60 expressions, all window words")

    return [rep, _nd_witness_report(rng)]


def _nd_witness_report(rng: random.Random) -> Report:
    rep = Report("nd-witness")
    bad = 0
    done = 0
    while done < 100:
        u = random_expr(rng)
        if not cy.trace_window(u, 3, 3):
            continue
        caps = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 2)))
        tree = NdTree.level_capped(caps)
        c = cy.nd_witness(u, tree)
        depth = max(3, len(c)) + 1
        breadth = max(3, max(c) + 1, tree.branching + 1)
        if not _oracle_subset(Atom(c), u, depth, breadth):
            bad += 1
            rep.add(f"inside:{done}", VIOLATED, f"{c} vs {expr_to_text(u)}")
        if not _window_avoids_tree(c, tree, depth, breadth):
            bad += 1
            rep.add(f"avoids:{done}", VIOLATED, f"{c} vs caps {caps}")
        done += 1
    rep.add("nd-witness", VERIFIED if not bad else VIOLATED,
            "100 random source/tree pairs, window-verified")
    return rep


def _window_avoids_tree(c: Seq, tree: NdTree, depth: int, breadth: int) -> bool:
    """Brute check that every window word extending ``c`` has a prefix
    outside the tree."""
    for tail in product(range(breadth + 1), repeat=depth - len(c)):
        w = c + tail
        if all(tree.member(w[: j]) for j in range(1, len(w) + 1)):
            return False
    return True


# -- suite: schemes-vg --------------------------------------------------------

G_PRESETS: dict[str, Callable[[int], int]] = {
    "identity": lambda n: n,
    "half": lambda n: n // 2,
    "swap": lambda n: n ^ 1,
}


def _lusin_probe_branch(scheme: Scheme, picks: Seq) -> BranchRule:
    """A concrete branch inside the node chain selected by ``picks``."""
    a: Seq = ()
    for n in picks:
        a += (n,)
    stem = cy.witness_cylinder(scheme.node(a))
    return BranchRule.padded(stem, 0)


def suite_schemes_vg(cfg: RunConfig) -> list[Report]:
    window = cfg.window(3, 6)
    reports: list[Report] = []
    schemes = [standard_scheme(), build_lusin(standard_base())]
    for base_scheme in schemes:
        for g_name, g in G_PRESETS.items():
            tag = f"{base_scheme.label}/{g_name}"
            moved = relabel(base_scheme, g)

            rep = check_relabel_identities(base_scheme, g, window)
            rep.name = f"identities[{tag}]"
            reports.append(rep)

            covers = check_covers(moved, window)
            covers.name = f"covers[{tag}]"
            reports.append(covers)

            rep = Report(f"openness[{tag}]")
            space = moved.space
            for a in window.nodes():
                source = base_scheme.node(tuple(g(x) for x in a))
                if space.equal(moved.node(a), source):
                    rep.add(seq_to_text(a), VERIFIED)
                else:
                    rep.add(seq_to_text(a), VIOLATED,
                            "node is not drawn from the base scheme")
            reports.append(rep)

            reports.append(_pi_net_replay(base_scheme, moved, g, g_name, window))

        dense = Report(f"dense[{base_scheme.label}/half]")
        moved = relabel(base_scheme, G_PRESETS["half"])
        if base_scheme.label == "standard":
            x = BranchRule.constant(0)
        else:
            x = _lusin_probe_branch(base_scheme, (1, 1, 1))
        probe = dense_in_itself_probe(moved, x, window)
        if probe.breaches or probe.with_status(UNRESOLVED) or not probe.entries:
            dense.add("dense", VIOLATED,
                      "duplicated-fiber relabeling missed a sibling pair")
        else:
            dense.add("dense", VERIFIED,
                      f"{len(probe.entries)} nodes, two siblings each")
        reports.append(dense)
    return reports


def _pi_net_replay(base_scheme: Scheme, moved: Scheme, g, g_name: str,
                   window: Window) -> Report:
    rep = Report(f"pi-net-replay[{base_scheme.label}/{g_name}]")
    space = moved.space
    from .scheme import preimage_table
    pre = preimage_table(g, window.breadth, 4 * window.breadth + 16)
    roots = [(), (0,), (1, 0)]
    for a in roots:
        ga = tuple(g(x) for x in a)
        for t in range(3):
            target = base_scheme.node(ga + (t,))
            if space.is_empty(space.intersect(target, base_scheme.node(ga))):
                continue
            hit = pi_net_probe(base_scheme, ga, target, 64)
            key = f"{seq_to_text(a)}:{t}"
            if hit is None:
                rep.add(key, UNRESOLVED, "no base hit within budget")
                continue
            suffix = hit[len(ga):]
            if any(v not in pre for v in suffix):
                rep.add(key, BREACH, "missing preimage for replay")
                continue
            lifted = a + tuple(pre[v] for v in suffix)
            node = moved.node(lifted)
            if (not space.is_empty(node) and space.subset(node, target)
                    and space.equal(node, base_scheme.node(hit))):
                rep.add(key, VERIFIED)
            else:
                rep.add(key, VIOLATED, "replayed hit does not match")
    return rep


# -- suite: lusin -------------------------------------------------------------

def suite_lusin(cfg: RunConfig) -> list[Report]:
    window = cfg.window(4, 6)
    base = standard_base()
    scheme = build_lusin(base)
    rep = check_lusin_conditions(scheme, base, window)
    reports = [rep]

    again = build_lusin(standard_base())
    determinism = Report("lusin-determinism")
    if dump_scheme(scheme, window) == dump_scheme(again, window):
        determinism.add("rebuild", VERIFIED, "window dumps are identical")
    else:
        determinism.add("rebuild", VIOLATED, "rebuild changed the scheme")
    reports.append(determinism)
    return reports


# -- suite: choquet-finite ----------------------------------------------------

def _chain_space() -> FiniteSpaceModel:
    return FiniteSpaceModel([0, 1, 2], [[], [2], [1, 2], [0, 1, 2]])


def suite_choquet_finite(cfg: RunConfig) -> list[Report]:
    rep = Report("deflation")
    space = _chain_space()
    x, y, z = space.whole(), space.mask_of([1, 2]), space.mask_of([2])
    history = ((x, x), (x, x), (y, y), (y, y), (z, z))
    if remove_redundant(space, history) == ((y, y), (z, z)):
        rep.add("paper-history", VERIFIED, "X,X / X,X / Y,Y / Y,Y / Z,Z")
    else:
        rep.add("paper-history", VIOLATED, "deflation mismatch")
    if remove_redundant(space, ((x, x),)) == ():
        rep.add("zero-pair", VERIFIED)
    else:
        rep.add("zero-pair", VIOLATED)

    rep.extend(_clause_dispatch_report(space, x, y, z))

    reports = [rep, _exhaustive_modified_report()]
    if cfg.space_path:
        extra = FiniteSpaceModel.from_json(_load_json(cfg.space_path))
        reports.append(_modified_wins_report(extra, "custom-space"))
    return reports


def _clause_dispatch_report(space: FiniteSpaceModel, x, y, z) -> Report:
    rep = Report("clause-dispatch")
    calls: list[tuple] = []

    def recording(space_, history, u):
        calls.append((history, u))
        return u

    modified = modify_strategy(recording)

    ok = modified(space, (), x) == x and not calls
    rep.add("first-move-whole", VERIFIED if ok else VIOLATED,
            "whole-space opener echoed without consulting the base rule")

    calls.clear()
    ok = modified(space, (), y) == y and calls == [((), y)]
    rep.add("first-move-other", VERIFIED if ok else VIOLATED,
            "other opener delegated on the empty history")

    history = ((x, x), (y, y))
    calls.clear()
    ok = modified(space, history, y) == y and not calls
    rep.add("echo", VERIFIED if ok else VIOLATED,
            "repeat move echoed without consulting the base rule")

    calls.clear()
    ok = (modified(space, history, z) == z
          and calls == [((((y, y),)), z)])
    rep.add("deflate", VERIFIED if ok else VIOLATED,
            "fresh move delegated on the deflated history")
    return rep


def _exhaustive_modified_report() -> Report:
    rep = Report("modified-copy-wins")
    expected_counts = {1: 1, 2: 4, 3: 29, 4: 355}
    total_runs = 0
    failures = 0
    for n in range(1, 5):
        tops = all_topologies(n)
        if len(tops) != expected_counts[n]:
            rep.add(f"count:{n}", VIOLATED,
                    f"{len(tops)} topologies, expected {expected_counts[n]}")
            continue
        rep.add(f"count:{n}", VERIFIED, f"{len(tops)} topologies")
        for masks in tops:
            space = FiniteSpaceModel(range(n), masks)
            failures += _dfs_modified_copy(space, rep)
            total_runs += 1
    rep.add("exhaustive", VERIFIED if not failures else VIOLATED,
            f"all I-sequences of length <= 4 over {total_runs} spaces")
    return rep


def _dfs_modified_copy(space: FiniteSpaceModel, rep: Report,
                       max_moves: int = 4) -> int:
    modified = modify_strategy(copy_strategy())
    failures = 0

    def dfs(history, moves_left: int) -> None:
        nonlocal failures
        limit = history[-1][1] if history else space.whole()
        for u in space.nonempty_opens_inside(limit):
            v = modified(space, history, u)
            if space.is_empty(v) or not space.subset(v, u):
                failures += 1
                rep.add("illegal-reply", VIOLATED,
                        f"history {history}, move {space.describe(u)}")
                continue
            if moves_left > 1:
                dfs(history + ((u, v),), moves_left - 1)

    dfs((), max_moves)
    return failures


def _modified_wins_report(space: FiniteSpaceModel, label: str) -> Report:
    rep = Report(label)
    failures = _dfs_modified_copy(space, rep)
    rep.add("exhaustive", VERIFIED if not failures else VIOLATED,
            "all I-sequences of length <= 4")
    return rep


# -- suite: choquet-extract ---------------------------------------------------

def suite_choquet_extract(cfg: RunConfig) -> list[Report]:
    window = cfg.window(2, 6)
    rep = Report("extract-finite")
    strategy = copy_strategy()
    bad_cover = bad_net = bad_replay = spaces = 0
    space_models = [FiniteSpaceModel(range(n), masks)
                    for n in range(1, 5) for masks in all_topologies(n)]
    if cfg.space_path:
        space_models.append(FiniteSpaceModel.from_json(_load_json(cfg.space_path)))
    branches = [t for ln in range(3) for t in product(range(3), repeat=ln)]
    for space in space_models:
        spaces += 1
        moves, replies = extract_schemes(space, strategy)
        cover = check_covers(replies, window)
        if cover.violations or cover.with_status(UNRESOLVED):
            bad_cover += 1
            rep.add(f"covers:{spaces}", VIOLATED, str(cover))
        if not _children_form_pi_base(space, replies, window):
            bad_net += 1
            rep.add(f"pi-base:{spaces}", VIOLATED, "a child pi-base misses")
        if not all(replay_branch(space, strategy, moves, replies, p)
                   for p in branches):
            bad_replay += 1
            rep.add(f"replay:{spaces}", VIOLATED, "branch replay mismatch")
    rep.add("covers", VERIFIED if not bad_cover else VIOLATED,
            f"verified cover at every node over {spaces} spaces")
    rep.add("pi-base", VERIFIED if not bad_net else VIOLATED,
            "children form a pi-base of every node")
    rep.add("replay", VERIFIED if not bad_replay else VIOLATED,
            f"{len(branches)} branches per space replay identically")

    return [rep, _baire_extract_report(cfg)]


def _children_form_pi_base(space: FiniteSpaceModel, replies: Scheme,
                           window: Window) -> bool:
    for a in window.nodes():
        va = replies.node(a)
        budget = len(space.nonempty_opens_inside(va)) + 1
        for u in space.nonempty_opens_inside(va):
            if not any(space.subset(replies.child(a, m), u)
                       for m in range(budget)):
                return False
    return True


def _cylinder_length(node) -> Optional[int]:
    if isinstance(node, Atom):
        return len(node.entries)
    if node is FULL:
        return 0
    return None


def _baire_extract_report(cfg: RunConfig) -> Report:
    rep = Report("extract-baire")
    rng = random.Random(cfg.seed)
    strategy = cylinder_strategy()
    moves, replies = extract_schemes(BAIRE, strategy)
    bad = 0
    for i in range(20):
        branch = tuple(rng.randint(1, 8) for _ in range(6))
        for k in range(len(branch) + 1):
            node = replies.node(branch[: k])
            length = _cylinder_length(node)
            if length is None or length < k:
                bad += 1
                rep.add(f"length:{i}:{k}", VIOLATED,
                        f"node {expr_to_text(node)} at depth {k}")
        if not replay_branch(BAIRE, strategy, moves, replies, branch):
            bad += 1
            rep.add(f"replay:{i}", VIOLATED, seq_to_text(branch))
    rep.add("cylinder-growth", VERIFIED if not bad else VIOLATED,
            "20 random branches to depth 6: reply length tracks depth")
    return rep


# -- suite: selectors ---------------------------------------------------------

def _all_prefix_maps(n_points: int, depth: int,
                     alphabet: tuple[int, ...]) -> list[PrefixMap]:
    points = tuple(range(n_points))
    stems = sorted(product(alphabet, repeat=depth))
    out = []
    for values in product(points, repeat=len(stems)):
        for default in points:
            if set(values) | {default} != set(points):
                continue
            assignment = dict(zip(stems, values))
            out.append(PrefixMap.build(points, depth, alphabet, assignment,
                                       default))
    return out


def suite_selectors(cfg: RunConfig) -> list[Report]:
    rep = Report("selector-identities")
    stems = [t for ln in range(3) for t in product(range(3), repeat=ln)]
    maps = checked = bad = 0
    for n_points in range(1, 5):
        subsets = [frozenset(p for p in range(n_points) if mask >> p & 1)
                   for mask in range(1 << n_points)]
        for depth in (1, 2):
            for alphabet in ((0,), (0, 1)):
                for pm in _all_prefix_maps(n_points, depth, alphabet):
                    maps += 1
                    for a in stems:
                        for u in subsets:
                            checked += 1
                            if not check_image_identity(pm, u, a):
                                bad += 1
                                rep.add(f"image:{maps}", VIOLATED,
                                        f"{pm.to_json()} u={sorted(u)} a={a}")
                    ident = check_selector_identity(
                        pm, pushforward_scheme(pm), Window(2, 3))
                    if not ident.ok:
                        bad += 1
                        rep.add(f"pushforward:{maps}", VIOLATED, str(ident))
    rep.add("image-identity", VERIFIED if not bad else VIOLATED,
            f"{checked} instances over {maps} maps")

    probe = Report("pi-space-probe")
    missing = 0
    for name, pm in preset_maps().items():
        subsets = [frozenset(s) for s in _all_subsets(pm.points)]
        for u in subsets:
            for a in stems:
                basic = SigmaBasic(u, a)
                if basic_is_empty(pm, basic):
                    continue
                hit = pi_space_probe(pm, basic, 50)
                if hit is None or not (pm.image(hit) <= u and hit[: len(a)] == a):
                    missing += 1
                    probe.add(f"{name}:{sorted(u)}:{seq_to_text(a)}", VIOLATED,
                              f"probe returned {hit}")
    probe.add("probe", VERIFIED if not missing else VIOLATED,
              "every nonempty basic admits a cylinder within budget 50")
    return [rep, probe]


def _all_subsets(points):
    out = []
    pts = list(points)
    for mask in range(1 << len(pts)):
        out.append([p for i, p in enumerate(pts) if mask >> i & 1])
    return out


# -- dispatch ------------------------------------------------------------------

_SUITE_FNS = {
    "cylinders-oracle": suite_cylinders_oracle,
    "schemes-vg": suite_schemes_vg,
    "lusin": suite_lusin,
    "choquet-finite": suite_choquet_finite,
    "choquet-extract": suite_choquet_extract,
    "selectors": suite_selectors,
}


def _load_json(path: str):
    import json
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read space file {path}: {exc}") from exc


def run_suite(cfg: RunConfig) -> dict:
    if cfg.suite not in _SUITE_FNS:
        raise ConfigError(f"unknown suite {cfg.suite!r}; "
                          f"choose from {', '.join(SUITES)}")
    reports = _SUITE_FNS[cfg.suite](cfg)
    violations = sum(len(r.violations) for r in reports)
    breaches = sum(len(r.breaches) for r in reports)
    return {
        "suite": cfg.suite,
        "seed": cfg.seed,
        "config": {"depth": cfg.depth, "breadth": cfg.breadth,
                   "space": cfg.space_path},
        "ok": violations == 0 and breaches == 0,
        "violations": violations,
        "breaches": breaches,
        "reports": [r.to_json() for r in reports],
    }
