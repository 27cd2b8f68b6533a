"""Online protection strategies.

All deciders are pure functions of the current reduced view.  Within a
round a strategy may place several firefighters; after each placement the
view is re-derived (the newly covered territory disappears), which is what
makes per-placement weights add up to the final profit.

Square-root comparisons are done in exact integer arithmetic throughout:
``w >= sqrt(W)`` becomes ``w*w >= W`` and population targets use
``ceil_sqrt``.  Ties between equally good vertices go to the lowest id;
ties between cycles go to the cycle whose smallest member id is lowest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .engine import GameState, Instance, TraceEntry
from .graph import (
    CactusDecomposition,
    Graph,
    GraphClass,
    Subgraph,
    ceil_sqrt,
    covered_set,
    induced_subgraph,
    tolerance,
    tolerance_edge,
    validate_and_decompose,
    _distances,
)

log = logging.getLogger(__name__)


class AlgorithmError(Exception):
    pass


class NotATreeError(AlgorithmError):
    pass


class WrongGraphClassError(AlgorithmError):
    pass


class NoEligibleCycleError(AlgorithmError):
    pass


class NoEligibleBreakVertexError(AlgorithmError):
    pass


class AlgorithmKind(Enum):
    GREEDY_TREE = "greedy-tree"
    ALG_A = "alg-a"
    ALG_C = "alg-c"
    ALG_E = "alg-e"


@dataclass(frozen=True)
class BreakDetail:
    """Everything a cycle break decided, in the deciding graph's ids.

    ``vertex`` is protected; ``anchor`` is the root neighbor whose root edge
    was conceptually severed to measure distances; ``depth`` is the largest
    fire travel distance that still keeps ``target`` vertices safe;
    ``cooldown`` is the fire's travel time to ``vertex`` along the opened
    cycle; ``cycle`` is the scanned cycle starting (root, anchor, ...).
    """

    vertex: int
    anchor: int
    depth: int
    cooldown: int
    cycle: tuple[int, ...]
    target: int
    cycle_weight: int


@dataclass(frozen=True)
class CooldownState:
    """Break aftermath timer: while positive, stay greedy on heavy cycles."""

    remaining: int = 0
    origin: BreakDetail | None = None

    def tick(self) -> "CooldownState":
        if self.remaining <= 1:
            return CooldownState(0, None)
        return CooldownState(self.remaining - 1, self.origin)


@dataclass(frozen=True)
class Choice:
    """One protection, plus the exact graph it was decided on.

    ``vertex`` is an id of the round's input view; ``graph``/``to_view``
    describe the (possibly already stripped) graph the decision used, and
    ``local_vertex`` the same protection in that graph's ids.
    """

    vertex: int
    reason: str
    graph: Graph
    to_view: tuple[int, ...]
    local_vertex: int
    brk: BreakDetail | None = None


def _weight_one(g: Graph, v: int) -> int:
    return len(covered_set(g, frozenset(), frozenset([v])))


def _cycle_weight(g: Graph, cycle: tuple[int, ...]) -> int:
    return len(covered_set(g, frozenset(), frozenset(cycle) - {g.root}))


def _greedy_neighbor(g: Graph) -> int:
    # heaviest root neighbor, lowest id on ties
    best = None
    for v in g.adjacency[g.root]:
        w = _weight_one(g, v)
        if best is None or (w, -v) > (best[0], -best[1]):
            best = (w, v)
    assert best is not None
    return best[1]


def _ordered_candidates(g: Graph, pool: set[int]) -> list[tuple[int, int]]:
    weighted = [(_weight_one(g, v), v) for v in sorted(pool)]
    weighted.sort(key=lambda t: (-t[0], t[1]))
    return weighted


def _strip_covered(g: Graph, chosen: list[int]) -> Subgraph:
    cov = covered_set(g, frozenset(), frozenset(chosen))
    keep = [v for v in range(g.n) if v not in cov]
    return induced_subgraph(g, keep, g.root)


def improved_break(g: Graph, decomp: CactusDecomposition, eta_sq: int) -> BreakDetail:
    """Pick the cycle break point that buys the most burning time.

    Considers root cycles whose weight squared is at least ``eta_sq`` (the
    threshold is passed squared to keep the comparison exact).  Among their
    root neighbors that leave enough territory behind, the anchor maximizes
    the edge tolerance at the square-root population target; the protected
    vertex is then the first one along the opened cycle covering territory
    at depth ``depth`` or beyond.
    """
    root = g.root
    eligible: list[tuple[int, int]] = []
    for i in decomp.root_cycle_indices:
        w = _cycle_weight(g, decomp.cycles[i])
        if w * w >= eta_sq:
            eligible.append((i, w))
    if not eligible:
        raise NoEligibleCycleError("no root cycle reaches the weight threshold")
    heaviest = max(w for _, w in eligible)
    target = ceil_sqrt(heaviest)
    best: tuple[int, int, int, int] | None = None  # (depth, -u, cycle index, weight)
    for i, w in eligible:
        cyc = decomp.cycles[i]
        for u in (cyc[1], cyc[-1]):
            rest = w - _weight_one(g, u)
            if rest < 0 or rest * rest < heaviest:
                continue
            t = tolerance_edge(g, decomp, (root, u), i, target)
            if t is None:
                continue
            if best is None or (t, -u) > (best[0], best[1]):
                best = (t, -u, i, w)
    if best is None:
        raise NoEligibleBreakVertexError("no root neighbor leaves enough territory")
    depth, neg_u, ci, _ = best
    anchor = -neg_u
    cyc = decomp.cycles[ci]
    if cyc[1] != anchor:
        cyc = (cyc[0],) + tuple(reversed(cyc[1:]))
    opened = induced_subgraph(
        g,
        {root} | set(covered_set(g, frozenset(), frozenset(cyc) - {root})),
        root,
        drop_edge=(root, anchor),
    )
    dmap_local = _distances(opened.graph, frozenset(), opened.graph.root)
    dmap = {opened.to_orig[v]: d for v, d in dmap_local.items()}
    for u_hat in cyc[1:]:
        territory = covered_set(g, frozenset(), frozenset([u_hat]))
        if any(dmap.get(v, -1) >= depth for v in territory):
            return BreakDetail(
                vertex=u_hat,
                anchor=anchor,
                depth=depth,
                cooldown=dmap[u_hat],
                cycle=cyc,
                target=target,
                cycle_weight=heaviest,
            )
    raise NoEligibleBreakVertexError("no cycle vertex covers the required depth")


def _root_cycles_by_weight(
    g: Graph, decomp: CactusDecomposition
) -> list[tuple[int, tuple[int, ...], int]]:
    out = []
    for i in decomp.root_cycle_indices:
        cyc = decomp.cycles[i]
        out.append((i, cyc, _cycle_weight(g, cyc)))
    out.sort(key=lambda t: (-t[2], min(t[1])))
    return out


def _step_tree_greedy(g: Graph) -> tuple[list[int], str, BreakDetail | None]:
    return [_greedy_neighbor(g)], "greedy", None


def _step_alg_a(
    g: Graph, decomp: CactusDecomposition, f_left: int
) -> tuple[list[int], str, BreakDetail | None]:
    cycles = _root_cycles_by_weight(g, decomp)
    if not cycles:
        return _step_tree_greedy(g)
    ci, cyc, w_cyc = cycles[0]
    order = _ordered_candidates(g, set(g.adjacency[g.root]) | (set(cyc) - {g.root}))
    w1, v1 = order[0]
    if f_left >= 2:
        w2, _ = order[1]
        if w1 + w2 >= w_cyc:
            return [v1], "greedy", None
        pair = sorted((cyc[1], cyc[-1]))
        return pair, "pair", None
    if w1 * w1 >= w_cyc:
        return [v1], "greedy", None
    target = ceil_sqrt(w_cyc)
    best = None
    for u in (cyc[1], cyc[-1]):
        t = tolerance(g, decomp, u, ci, target)
        if t is None:
            continue
        if best is None or (t, -u) > (best[0], -best[1]):
            best = (t, u)
    if best is None:  # cannot happen for a break-branch cycle; stay safe
        return [v1], "greedy", None
    detail = BreakDetail(
        vertex=best[1],
        anchor=best[1],
        depth=best[0],
        cooldown=0,
        cycle=cyc if cyc[1] == best[1] else (cyc[0],) + tuple(reversed(cyc[1:])),
        target=target,
        cycle_weight=w_cyc,
    )
    return [best[1]], "break", detail


def _step_alg_c(
    g: Graph,
    decomp: CactusDecomposition,
    f_left: int,
    cooldown: CooldownState,
    n_original: int,
) -> tuple[list[int], str, BreakDetail | None, CooldownState]:
    cycles = _root_cycles_by_weight(g, decomp)
    if not cycles:
        verts, reason, brk = _step_tree_greedy(g)
        return verts, reason, brk, cooldown
    _, cyc1, w1_cyc = cycles[0]
    pool = set(g.adjacency[g.root])
    for _, cyc, _ in cycles:
        pool |= set(cyc) - {g.root}
    order = _ordered_candidates(g, pool)
    w1, v1 = order[0]
    if f_left >= 2:
        w2, _ = order[1]
        if w1 + w2 >= w1_cyc:
            return [v1], "greedy", None, cooldown
        return sorted((cyc1[1], cyc1[-1])), "pair", None, cooldown
    if w1 * w1 >= w1_cyc or w1_cyc * w1_cyc <= n_original or cooldown.remaining > 0:
        return [v1], "greedy", None, CooldownState(0, None)
    try:
        detail = improved_break(g, decomp, n_original)
    except (NoEligibleCycleError, NoEligibleBreakVertexError) as exc:
        # the guard makes this unreachable except on tiny cycles; fall back
        log.warning("cycle break found no eligible vertex (%s); protecting greedily", exc)
        return [v1], "greedy", None, CooldownState(0, None)
    return [detail.vertex], "break", detail, CooldownState(detail.cooldown, detail)


def _step_alg_e(
    g: Graph, decomp: CactusDecomposition, f_left: int
) -> tuple[list[int], str, BreakDetail | None]:
    cycles = _root_cycles_by_weight(g, decomp)
    if not cycles:
        return _step_tree_greedy(g)
    _, cyc1, w1_cyc = cycles[0]
    pool = set(g.adjacency[g.root])
    for _, cyc, _ in cycles:
        pool |= set(cyc) - {g.root}
    order = _ordered_candidates(g, pool)
    w1, v1 = order[0]
    if f_left >= 2:
        w2, _ = order[1]
        if w1 + w2 >= w1_cyc:
            return [v1], "greedy", None
        return sorted((cyc1[1], cyc1[-1])), "pair", None
    return [v1], "greedy", None


def _consume_round(
    view: Graph,
    step: Callable[[Graph, CactusDecomposition, int], tuple[list[int], str, BreakDetail | None]],
    decomp: CactusDecomposition,
    f: int,
) -> list[Choice]:
    g, dec = view, decomp
    to_view = tuple(range(view.n))
    out: list[Choice] = []
    while f > 0 and g.n > 1:
        locs, reason, brk = step(g, dec, f)
        locs = locs[:f]
        for lv in locs:
            out.append(Choice(to_view[lv], reason, g, to_view, lv, brk))
        f -= len(locs)
        if f <= 0:
            break
        sub = _strip_covered(g, locs)
        to_view = tuple(to_view[o] for o in sub.to_orig)
        g, dec = sub.graph, validate_and_decompose(sub.graph)
    return out


def greedy_tree_round(view: Graph, f: int) -> list[Choice]:
    """Protect the f heaviest root neighbors of a tree, one at a time."""
    if view.edge_count() != view.n - 1:
        raise NotATreeError("greedy baseline only plays on trees")
    return _consume_round(view, lambda g, dec, fl: _step_tree_greedy(g), validate_and_decompose(view), f)


def alg_a_round(view: Graph, decomp: CactusDecomposition, f: int) -> list[Choice]:
    """One round of the 1-almost-tree strategy on the current view."""
    if decomp.class_tag is GraphClass.CACTUS:
        raise WrongGraphClassError("this strategy handles at most one cycle")
    return _consume_round(view, _step_alg_a, decomp, f)


def alg_e_round(view: Graph, decomp: CactusDecomposition, f: int) -> list[Choice]:
    """One round of the plain cactus strategy (no cycle breaking)."""
    return _consume_round(view, _step_alg_e, decomp, f)


def alg_c_round(
    view: Graph,
    decomp: CactusDecomposition,
    f: int,
    cooldown: CooldownState,
    n_original: int,
) -> tuple[list[Choice], CooldownState]:
    """One round of the full cactus strategy.

    The cool-down timer elapses once per round, firefighters or not.
    """
    cd = cooldown.tick()
    g, dec = view, decomp
    to_view = tuple(range(view.n))
    out: list[Choice] = []
    while f > 0 and g.n > 1:
        locs, reason, brk, cd_new = _step_alg_c(g, dec, f, cd, n_original)
        locs = locs[:f]
        if brk is not None:
            # keep the timer's diagnostic origin in the round view's ids
            mapped = BreakDetail(
                vertex=to_view[brk.vertex],
                anchor=to_view[brk.anchor],
                depth=brk.depth,
                cooldown=brk.cooldown,
                cycle=tuple(to_view[x] for x in brk.cycle),
                target=brk.target,
                cycle_weight=brk.cycle_weight,
            )
            cd_new = CooldownState(cd_new.remaining, mapped)
        cd = cd_new
        for lv in locs:
            out.append(Choice(to_view[lv], reason, g, to_view, lv, brk))
        f -= len(locs)
        if f <= 0:
            break
        sub = _strip_covered(g, locs)
        to_view = tuple(to_view[o] for o in sub.to_orig)
        g, dec = sub.graph, validate_and_decompose(sub.graph)
    return out, cd


@dataclass(frozen=True)
class ProtectEvent:
    """A recorded protection: what was done and what the strategy saw."""

    time: int
    round: int
    vertex: int
    reason: str
    graph: Graph
    to_orig: tuple[int, ...]
    brk: BreakDetail | None


@dataclass(frozen=True)
class RunResult:
    profit: int
    trace: tuple[TraceEntry, ...]
    events: tuple[ProtectEvent, ...] | None = None


_CLASS_OK = {
    AlgorithmKind.GREEDY_TREE: {GraphClass.TREE},
    AlgorithmKind.ALG_A: {GraphClass.TREE, GraphClass.ONE_ALMOST_TREE},
    AlgorithmKind.ALG_C: {GraphClass.TREE, GraphClass.ONE_ALMOST_TREE, GraphClass.CACTUS},
    AlgorithmKind.ALG_E: {GraphClass.TREE, GraphClass.ONE_ALMOST_TREE, GraphClass.CACTUS},
}


def run_algorithm(
    instance: Instance, kind: AlgorithmKind, record: bool = False
) -> RunResult:
    """Play a whole game with the chosen strategy.

    With ``record`` every protection carries the decision-time view, which
    the property suites need to evaluate the structural guarantees.
    """
    decomp0 = validate_and_decompose(instance.graph)
    if decomp0.class_tag not in _CLASS_OK[kind]:
        raise WrongGraphClassError(
            f"{kind.value} does not accept a {decomp0.class_tag.value} instance"
        )
    state = GameState(instance)
    cd = CooldownState()
    n_orig = instance.graph.n
    events: list[ProtectEvent] = []
    while not state.is_finished():
        f = instance.firefighters(state.round)
        choices: list[Choice] = []
        if f > 0 or kind is AlgorithmKind.ALG_C:
            sub = state.reduced_view()
            dec = validate_and_decompose(sub.graph)
            if kind is AlgorithmKind.ALG_C:
                choices, cd = alg_c_round(sub.graph, dec, f, cd, n_orig)
            elif kind is AlgorithmKind.ALG_A:
                choices = alg_a_round(sub.graph, dec, f)
            elif kind is AlgorithmKind.ALG_E:
                choices = alg_e_round(sub.graph, dec, f)
            else:
                choices = greedy_tree_round(sub.graph, f)
        for ch in choices:
            orig = sub.to_orig[ch.vertex]
            state.protect(orig)
            if record:
                events.append(
                    ProtectEvent(
                        time=len(state.trace),
                        round=state.trace[-1].round,
                        vertex=orig,
                        reason=ch.reason,
                        graph=ch.graph,
                        to_orig=tuple(sub.to_orig[x] for x in ch.to_view),
                        brk=ch.brk,
                    )
                )
        state.spread()
    return RunResult(
        profit=state.profit(),
        trace=tuple(state.trace),
        events=tuple(events) if record else None,
    )
