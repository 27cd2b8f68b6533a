"""Round-based firefighting game state.

A game runs on an instance (graph + firefighter sequence).  The fire starts
at the root.  Each round the player protects up to f_i still-available
vertices, then the fire spreads one step to every unprotected neighbor of a
burning vertex.  Unused firefighters are lost; the game ends when the fire
cannot spread any more, and the profit is the number of unburned vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

from .graph import Graph, Subgraph, covered_set


class GameError(Exception):
    pass


class VertexUnavailableError(GameError):
    pass


class NoFirefighterLeftError(GameError):
    pass


class GameNotFinishedError(GameError):
    pass


class InvalidScheduleError(GameError):
    pass


class Status(Enum):
    AVAILABLE = "available"
    PROTECTED = "protected"
    BURNED = "burned"


class TraceEntry(NamedTuple):
    time: int
    round: int
    vertex: int


# a schedule is a collection of (round, vertex) protection orders
ProtectionSchedule = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Instance:
    """A firefighting problem: a rooted graph and the firefighter sequence.

    ``sequence[i]`` firefighters arrive in round i+1; rounds past the end of
    the sequence get none.  ``name`` is a label for reports only.
    """

    graph: Graph
    sequence: tuple[int, ...]
    name: str | None = None

    def __post_init__(self):
        if any((not isinstance(f, int)) or f < 0 for f in self.sequence):
            raise ValueError("firefighter counts must be nonnegative integers")

    def firefighters(self, round_no: int) -> int:
        if round_no < 1:
            raise ValueError("rounds are numbered from 1")
        if round_no <= len(self.sequence):
            return self.sequence[round_no - 1]
        return 0


class GameState:
    """Mutable game position: statuses, current round, protection trace."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.status: list[Status] = [Status.AVAILABLE] * instance.graph.n
        self.status[instance.graph.root] = Status.BURNED
        self.round = 1
        self.trace: list[TraceEntry] = []
        self._placed_this_round = 0

    def burned(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.status) if s is Status.BURNED)

    def protected(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.status) if s is Status.PROTECTED)

    def protect(self, v: int) -> None:
        """Place one firefighter on v during the current round."""
        if not 0 <= v < self.instance.graph.n:
            raise VertexUnavailableError(f"vertex {v} does not exist")
        if self.status[v] is not Status.AVAILABLE:
            raise VertexUnavailableError(f"vertex {v} is {self.status[v].value}")
        if self._placed_this_round >= self.instance.firefighters(self.round):
            raise NoFirefighterLeftError(f"round {self.round} budget exhausted")
        self.status[v] = Status.PROTECTED
        self._placed_this_round += 1
        self.trace.append(TraceEntry(len(self.trace) + 1, self.round, v))

    def spread(self) -> None:
        """Advance the fire one step and start the next round."""
        g = self.instance.graph
        newly = [
            v
            for v in range(g.n)
            if self.status[v] is Status.AVAILABLE
            and any(self.status[u] is Status.BURNED for u in g.adjacency[v])
        ]
        for v in newly:
            self.status[v] = Status.BURNED
        self.round += 1
        self._placed_this_round = 0

    def is_finished(self) -> bool:
        g = self.instance.graph
        for v in range(g.n):
            if self.status[v] is Status.AVAILABLE and any(
                self.status[u] is Status.BURNED for u in g.adjacency[v]
            ):
                return False
        return True

    def profit(self) -> int:
        if not self.is_finished():
            raise GameNotFinishedError("fire can still spread")
        return sum(1 for s in self.status if s is not Status.BURNED)

    def truly_available(self) -> frozenset[int]:
        """Vertices the fire can still reach: unburned, unprotected, and
        connected to the burning region by a protected-free path."""
        g = self.instance.graph
        seen = set()
        queue = deque()
        for v in range(g.n):
            if self.status[v] is Status.BURNED:
                seen.add(v)
                queue.append(v)
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in seen and self.status[v] is Status.AVAILABLE:
                    seen.add(v)
                    queue.append(v)
        return frozenset(v for v in seen if self.status[v] is not Status.BURNED)

    def reduced_view(self) -> Subgraph:
        """Shrink the position to its live part.

        The burning region contracts into a single root, everything already
        protected or cut off from the fire disappears, and parallel edges
        from the contraction collapse.  View id 0 is the contracted root and
        maps back to the fire source; other ids keep the original order.
        """
        g = self.instance.graph
        avail = sorted(self.truly_available())
        index = {o: i + 1 for i, o in enumerate(avail)}
        edges = set()
        burned = {v for v in range(g.n) if self.status[v] is Status.BURNED}
        for u in avail:
            iu = index[u]
            for v in g.adjacency[u]:
                if v in index:
                    if u < v:
                        edges.add((iu, index[v]))
                elif v in burned:
                    edges.add((0, iu))
        view = Graph.from_edges(len(avail) + 1, sorted(edges), 0)
        return Subgraph(view, (g.root, *avail))


def new_game(instance: Instance) -> GameState:
    return GameState(instance)


def replay(instance: Instance, schedule: Iterable[tuple[int, int]]) -> tuple[int, GameState]:
    """Run a fixed protection schedule to completion and return its profit.

    Raises :class:`InvalidScheduleError` when the schedule protects a burned
    or already-protected vertex, overspends a round's budget, or is malformed.
    """
    by_round: dict[int, list[int]] = {}
    last = 0
    for entry in schedule:
        try:
            r, v = entry
        except (TypeError, ValueError) as exc:
            raise InvalidScheduleError(f"malformed entry {entry!r}") from exc
        if r < 1:
            raise InvalidScheduleError(f"round {r} out of range")
        by_round.setdefault(r, []).append(v)
        last = max(last, r)
    state = GameState(instance)
    for r in range(1, last + 1):
        for v in by_round.get(r, ()):
            try:
                state.protect(v)
            except GameError as exc:
                raise InvalidScheduleError(f"round {r}, vertex {v}: {exc}") from exc
        state.spread()
    while not state.is_finished():
        state.spread()
    return state.profit(), state


def profit_of_protections(g: Graph, protected: Iterable[int]) -> int:
    """Profit a finished game must show: the weight of its protected set."""
    return len(covered_set(g, frozenset(), frozenset(protected)))
