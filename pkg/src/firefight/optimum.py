"""Exact offline optimum by exhaustive search over protection schedules.

State is a pair of bitmasks (burned, protected) plus the round number, so
the search only fits small instances; the solver refuses anything larger
than ``max_n`` up front.  Three prunings keep it exact:

* only truly available vertices are candidates (protecting a vertex the
  fire can no longer reach never helps),
* every branch uses exactly ``min(f, available)`` firefighters (protecting
  more never hurts, so smaller subsets are dominated),
* a branch stops early once it saves everything not yet burned.

Once the sequence is exhausted no further protection is possible, so the
remaining spread collapses into a single reachability closure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .engine import Instance, ProtectionSchedule
from .graph import _distances, validate_and_decompose

DEFAULT_NODE_BUDGET = 50_000_000
DEFAULT_MAX_N = 22


class OptError(Exception):
    pass


class SearchBudgetExceededError(OptError):
    pass


class GraphTooLargeError(OptError):
    pass


@dataclass(frozen=True)
class OptResult:
    value: int
    schedule: ProtectionSchedule
    nodes_explored: int


def solve_opt(
    instance: Instance,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    max_n: int = DEFAULT_MAX_N,
    use_memo: bool = True,
) -> OptResult:
    """Best achievable profit and one schedule attaining it.

    Deterministic: candidate subsets are enumerated in ascending vertex
    order and only strict improvements replace the incumbent, so the
    returned schedule is reproducible.
    """
    g = instance.graph
    n = g.n
    if n > max_n:
        raise GraphTooLargeError(f"instance has {n} vertices, limit is {max_n}")
    seq = instance.sequence
    rounds = len(seq)
    full = (1 << n) - 1
    nbr = [0] * n
    for u in range(n):
        m = 0
        for v in g.adjacency[u]:
            m |= 1 << v
        nbr[u] = m

    def grow(mask: int) -> int:
        out = mask
        mm = mask
        while mm:
            b = mm & -mm
            out |= nbr[b.bit_length() - 1]
            mm ^= b
        return out

    def spread_once(burned: int, protected: int) -> int:
        return grow(burned) & ~protected & full

    def reach(burned: int, protected: int) -> int:
        # everything the fire can ever touch: one linear-time flood
        seen = burned
        stack = []
        mm = burned
        while mm:
            b = mm & -mm
            stack.append(b.bit_length() - 1)
            mm ^= b
        while stack:
            u = stack.pop()
            mm = nbr[u] & ~seen & ~protected
            while mm:
                b = mm & -mm
                seen |= b
                stack.append(b.bit_length() - 1)
                mm ^= b
        return seen

    nodes = 0
    memo: dict[tuple[int, int, int], tuple[int, ProtectionSchedule]] = {}

    def dfs(burned: int, protected: int, rnd: int) -> tuple[int, ProtectionSchedule]:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceededError(f"node budget {node_budget} exhausted")
        if rnd > rounds:
            final = reach(burned, protected)
            return n - bin(final).count("1"), ()
        key = (burned, protected, rnd)
        if use_memo and key in memo:
            return memo[key]
        avail_mask = reach(burned, protected) & ~burned
        avail = [v for v in range(n) if (avail_mask >> v) & 1]
        k = min(seq[rnd - 1], len(avail))
        if k == 0:
            if not avail:
                result = (n - bin(burned).count("1"), ())
            else:
                result = dfs(spread_once(burned, protected), protected, rnd + 1)
        else:
            ub = n - bin(burned).count("1")
            best_val = -1
            best_suf: ProtectionSchedule = ()
            for combo in itertools.combinations(avail, k):
                pm = protected
                for v in combo:
                    pm |= 1 << v
                val, suf = dfs(spread_once(burned, pm), pm, rnd + 1)
                if val > best_val:
                    best_val = val
                    best_suf = tuple((rnd, v) for v in combo) + suf
                    if best_val >= ub:
                        break
            result = (best_val, best_suf)
        if use_memo:
            memo[key] = result
        return result

    value, sched = dfs(1 << g.root, 0, 1)
    return OptResult(value=value, schedule=sched, nodes_explored=nodes)


def opt_upper_bound(instance: Instance) -> int:
    """Cheap bound: a vertex burns for sure when no firefighter arrives
    before the fire can, i.e. the budget prefix up to its depth is zero.
    """
    g = instance.graph
    dd = _distances(g, frozenset(), g.root)
    prefix = list(itertools.accumulate(instance.sequence))

    def cum(d: int) -> int:
        if d < 1 or not prefix:
            return 0
        return prefix[min(d, len(prefix)) - 1]

    doomed = sum(1 for v in range(g.n) if v != g.root and cum(dd[v]) == 0)
    return g.n - 1 - doomed


def normalize_nonredundant(
    instance: Instance, schedule: ProtectionSchedule
) -> ProtectionSchedule:
    """Drop provably redundant cycle protections from a valid schedule.

    Whenever three or more protected vertices sit on one cycle, any vertex
    strictly between the two outermost (in cyclic order from the cycle's
    closest-to-root vertex) is shielded by them no matter the timing, so
    removing it changes neither validity nor profit.  Keeps dropping until
    every cycle carries at most two protections.
    """
    g = instance.graph
    decomp = validate_and_decompose(g)
    entries = list(schedule)
    if not decomp.cycles:
        return tuple(entries)
    dd = _distances(g, frozenset(), g.root)
    changed = True
    while changed:
        changed = False
        for cyc in decomp.cycles:
            u0 = min(cyc, key=lambda v: (dd[v], v))
            k = cyc.index(u0)
            pos = {v: i for i, v in enumerate(cyc[k:] + cyc[:k])}
            on_cycle = sorted(
                (e for e in entries if e[1] in pos), key=lambda e: pos[e[1]]
            )
            if len(on_cycle) >= 3:
                entries.remove(on_cycle[1])
                changed = True
    return tuple(entries)
