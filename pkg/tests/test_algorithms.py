import random

import pytest
from hypothesis import given, strategies as st

from firefight.algorithms import (
    AlgorithmKind,
    CooldownState,
    NoEligibleCycleError,
    NotATreeError,
    WrongGraphClassError,
    alg_c_round,
    greedy_tree_round,
    improved_break,
    run_algorithm,
)
from firefight.engine import Instance, replay
from firefight.graph import Graph, validate_and_decompose
from firefight.instances import (
    make_tadpole,
    random_cactus,
    random_one_almost_tree,
    random_sequence,
    random_tree,
)


def test_kind_values():
    assert {k.value for k in AlgorithmKind} == {
        "greedy-tree",
        "alg-a",
        "alg-c",
        "alg-e",
    }


def test_tadpole_traces_frozen():
    inst = Instance(make_tadpole(10, 3), (1, 1))
    runs = {
        kind: run_algorithm(inst, kind, record=True)
        for kind in (AlgorithmKind.ALG_A, AlgorithmKind.ALG_C, AlgorithmKind.ALG_E)
    }
    for kind in (AlgorithmKind.ALG_A, AlgorithmKind.ALG_C):
        r = runs[kind]
        assert r.profit == 9
        assert [(t.round, t.vertex) for t in r.trace] == [(1, 1), (2, 9)]
        assert [e.reason for e in r.events] == ["break", "greedy"]
    r = runs[AlgorithmKind.ALG_E]
    assert r.profit == 4
    assert [(t.round, t.vertex) for t in r.trace] == [(1, 11), (2, 2)]
    assert [e.reason for e in r.events] == ["greedy", "greedy"]


def test_tadpole_break_event_detail_frozen():
    inst = Instance(make_tadpole(10, 3), (1, 1))
    r = run_algorithm(inst, AlgorithmKind.ALG_C, record=True)
    brk = r.events[0].brk
    assert brk is not None
    assert brk.vertex == 1
    assert brk.anchor == 1
    assert brk.depth == 7
    assert brk.cooldown == 10
    assert brk.target == 4
    assert brk.cycle_weight == 10
    assert brk.cycle == tuple(range(11))


def test_pair_protection_on_heavy_root_cycle():
    # two firefighters close the cycle at both root neighbors
    inst = Instance(make_tadpole(10, 3), (2,))
    for kind in (AlgorithmKind.ALG_A, AlgorithmKind.ALG_C, AlgorithmKind.ALG_E):
        r = run_algorithm(inst, kind, record=True)
        assert r.profit == 10
        assert [e.reason for e in r.events] == ["pair", "pair"]
        assert sorted(t.vertex for t in r.trace) == [1, 10]


def test_improved_break_frozen_example():
    # hexagon through the root with a pendant at vertex 3
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (3, 6)])
    b = improved_break(g, validate_and_decompose(g), eta_sq=7)
    assert (b.vertex, b.anchor, b.depth, b.cooldown) == (1, 1, 4, 5)
    assert b.target == 3
    assert b.cycle == (0, 1, 2, 3, 4, 5)
    assert b.cycle_weight == 6


def test_improved_break_requires_heavy_cycle():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(NoEligibleCycleError):
        improved_break(g, validate_and_decompose(g), eta_sq=10**6)


def test_greedy_round_takes_heaviest_subtree():
    # subtree sizes under the root: 3 via vertex 1, 1 via vertex 5
    g = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)])
    choices = greedy_tree_round(g, 1)
    assert [c.vertex for c in choices] == [1]
    assert choices[0].reason == "greedy"


def test_greedy_round_rejects_cycles():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(NotATreeError):
        greedy_tree_round(g, 1)


def test_class_gating():
    two_cycles = Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 3)]
    )
    with pytest.raises(WrongGraphClassError):
        run_algorithm(Instance(two_cycles, (1,)), AlgorithmKind.ALG_A)
    with pytest.raises(WrongGraphClassError):
        run_algorithm(Instance(two_cycles, (1,)), AlgorithmKind.GREEDY_TREE)
    # trees are accepted by every strategy
    tree = random_tree(8, 5)
    for kind in AlgorithmKind:
        run_algorithm(Instance(tree, (1, 1)), kind)


def test_cooldown_state_tick():
    assert CooldownState(0, None).tick() == CooldownState(0, None)
    assert CooldownState(3, 7).tick() == CooldownState(2, 7)
    assert CooldownState(1, 7).tick() == CooldownState(0, None)


def test_alg_c_round_reports_cooldown():
    g = make_tadpole(10, 3)
    decomp = validate_and_decompose(g)
    choices, cd = alg_c_round(g, decomp, 1, CooldownState(0, None), g.n)
    assert [c.reason for c in choices] == ["break"]
    assert cd.remaining == 10
    # an active cool-down forces one greedy protection, then clears
    choices2, cd2 = alg_c_round(g, decomp, 1, CooldownState(5, 1), g.n)
    assert [c.reason for c in choices2] == ["greedy"]
    assert cd2 == CooldownState(0, None)


def _random_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 13)
    style = rng.randrange(3)
    if style == 0:
        g = random_tree(n, seed)
    elif style == 1:
        g = random_one_almost_tree(max(n, 4), seed)
    else:
        g = random_cactus(n, 0.6, 6, seed)
    seq = random_sequence(rng.randint(1, 4), rng.randint(1, 6), False, seed + 1)
    return Instance(g, seq)


@given(st.integers(0, 2**20))
def test_run_profit_matches_replay_of_trace(seed):
    inst = _random_instance(seed)
    tag = validate_and_decompose(inst.graph).class_tag
    for kind in AlgorithmKind:
        try:
            result = run_algorithm(inst, kind, record=True)
        except WrongGraphClassError:
            assert (kind, tag.value) not in _accepts
            continue
        assert (kind, tag.value) in _accepts
        profit, _ = replay(inst, tuple((t.round, t.vertex) for t in result.trace))
        assert profit == result.profit
        assert len(result.events) == len(result.trace)
        for event, entry in zip(result.events, result.trace):
            assert (event.time, event.round, event.vertex) == entry
            assert event.vertex in event.to_orig


_accepts = {
    (AlgorithmKind.GREEDY_TREE, "tree"),
    (AlgorithmKind.ALG_A, "tree"),
    (AlgorithmKind.ALG_A, "one-almost-tree"),
    (AlgorithmKind.ALG_C, "tree"),
    (AlgorithmKind.ALG_C, "one-almost-tree"),
    (AlgorithmKind.ALG_C, "cactus"),
    (AlgorithmKind.ALG_E, "tree"),
    (AlgorithmKind.ALG_E, "one-almost-tree"),
    (AlgorithmKind.ALG_E, "cactus"),
}


@given(st.integers(0, 2**20))
def test_runs_are_deterministic(seed):
    inst = _random_instance(seed)
    for kind in AlgorithmKind:
        try:
            first = run_algorithm(inst, kind)
            second = run_algorithm(inst, kind)
        except WrongGraphClassError:
            continue
        assert first.profit == second.profit
        assert first.trace == second.trace


@given(st.integers(0, 2**20))
def test_alg_e_never_breaks(seed):
    inst = _random_instance(seed)
    result = run_algorithm(inst, AlgorithmKind.ALG_E, record=True)
    assert all(e.reason in ("greedy", "pair") for e in result.events)
    assert all(e.brk is None for e in result.events)
