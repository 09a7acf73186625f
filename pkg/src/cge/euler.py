"""Eulerian cycles, robot walks, and full solution verification.

A robot cycle is a closed walk starting and ending at the start vertex; its
edge multiset records traversal counts.  A multiset is realizable as a robot
cycle exactly when its spanned multigraph is connected, contains the start
vertex, and has all degrees even; the conversion in both directions lives
here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .errors import NotEulerian, StartNotInGraph
from .graphs import EdgeMultiset, ExplorationInstance, Multigraph, norm_edge


@dataclass(frozen=True)
class RobotCycle:
    """A closed walk (v_0, ..., v_l) with v_0 = v_l; length counts traversals."""

    walk: tuple[int, ...]

    def __post_init__(self):
        if len(self.walk) == 0:
            raise ValueError("walk must contain at least the start vertex")
        if self.walk[0] != self.walk[-1]:
            raise ValueError("walk must start and end at the same vertex")

    @property
    def start(self) -> int:
        return self.walk[0]

    @property
    def length(self) -> int:
        return len(self.walk) - 1

    def edge_multiset(self) -> EdgeMultiset:
        return Counter(
            norm_edge(self.walk[i], self.walk[i + 1]) for i in range(self.length)
        )


def cycle_to_graph(rc: RobotCycle, n: int | None = None) -> Multigraph:
    """The multigraph whose edge multiplicities are the walk's traversal counts.

    The walk is an Eulerian cycle of the result.
    """
    if n is None:
        n = max(rc.walk) + 1
    return Multigraph.from_counter(n, rc.edge_multiset())


def has_eulerian_cycle(g: Multigraph) -> bool:
    """True iff the non-isolated part is connected and every degree is even.

    The empty graph qualifies.
    """
    if any(g.degree(v) % 2 for v in range(g.n)):
        return False
    return g.is_connected()


def find_eulerian_cycle(g: Multigraph, start: int) -> RobotCycle:
    """Hierholzer's algorithm with deterministic tie-breaking.

    From the current vertex the least-id neighbor with remaining multiplicity
    is consumed first.  An empty graph yields the trivial walk (start,).
    """
    if not (0 <= start < g.n):
        raise StartNotInGraph(f"start vertex {start} out of range")
    if g.num_edges == 0:
        return RobotCycle((start,))
    if g.degree(start) == 0:
        raise StartNotInGraph(f"start vertex {start} is isolated")
    if not has_eulerian_cycle(g):
        raise NotEulerian("graph is not connected with all degrees even")

    remaining = {e: m for e, m in g.edge_items()}
    nbrs = {v: g.neighbors(v) for v in g.active_vertices()}
    ptr = {v: 0 for v in nbrs}

    stack = [start]
    path: list[int] = []
    while stack:
        v = stack[-1]
        lst = nbrs.get(v, ())
        i = ptr.get(v, 0)
        # advance past exhausted neighbors; pointers only move forward because
        # multiplicities never grow back
        while i < len(lst) and remaining.get(norm_edge(v, lst[i]), 0) == 0:
            i += 1
        ptr[v] = i
        if i < len(lst):
            w = lst[i]
            remaining[norm_edge(v, w)] -= 1
            stack.append(w)
        else:
            path.append(stack.pop())
    path.reverse()
    return RobotCycle(tuple(path))


@dataclass(frozen=True)
class Solution:
    """k robot cycles; value is the longest walk length."""

    cycles: tuple[RobotCycle, ...]

    @property
    def k(self) -> int:
        return len(self.cycles)

    @cached_property
    def multisets(self) -> tuple[EdgeMultiset, ...]:
        return tuple(rc.edge_multiset() for rc in self.cycles)

    @property
    def value(self) -> int:
        return max(rc.length for rc in self.cycles)


@dataclass(frozen=True)
class RobotReport:
    index: int
    starts_at_init: bool
    ends_at_init: bool
    adjacency_ok: bool
    length: int

    @property
    def ok(self) -> bool:
        return self.starts_at_init and self.ends_at_init and self.adjacency_ok


@dataclass(frozen=True)
class VerificationReport:
    robot_reports: tuple[RobotReport, ...]
    uncovered: tuple[tuple[int, int], ...]
    value: int
    budget_ok: bool | None  # None when the instance carries no budget
    robot_count_ok: bool

    @property
    def coverage_ok(self) -> bool:
        return not self.uncovered

    @property
    def ok(self) -> bool:
        return (
            self.robot_count_ok
            and all(r.ok for r in self.robot_reports)
            and self.coverage_ok
            and (self.budget_ok is not False)
        )

    def lines(self) -> list[str]:
        out = []
        for r in self.robot_reports:
            out.append(
                f"robot {r.index + 1}: start={'ok' if r.starts_at_init else 'BAD'}"
                f" end={'ok' if r.ends_at_init else 'BAD'}"
                f" edges={'ok' if r.adjacency_ok else 'BAD'}"
                f" length={r.length}"
            )
        if not self.robot_count_ok:
            out.append("robot count: BAD")
        if self.uncovered:
            missing = " ".join(f"{u}-{v}" for u, v in self.uncovered)
            out.append(f"uncovered: {missing}")
        else:
            out.append("uncovered: none")
        out.append(f"value {self.value}")
        if self.budget_ok is not None:
            out.append(f"budget: {'ok' if self.budget_ok else 'exceeded'}")
        out.append(f"result: {'ok' if self.ok else 'FAIL'}")
        return out


def verify_solution(inst: ExplorationInstance, sol: Solution) -> VerificationReport:
    """Check every solution condition; failures are report entries, not errors."""
    g = inst.graph
    reports = []
    for i, rc in enumerate(sol.cycles):
        adjacency_ok = all(
            0 <= rc.walk[j] < g.n
            and 0 <= rc.walk[j + 1] < g.n
            and rc.walk[j] != rc.walk[j + 1]
            and g.has_edge(rc.walk[j], rc.walk[j + 1])
            for j in range(rc.length)
        )
        reports.append(
            RobotReport(
                index=i,
                starts_at_init=rc.walk[0] == inst.v_init,
                ends_at_init=rc.walk[-1] == inst.v_init,
                adjacency_ok=adjacency_ok,
                length=rc.length,
            )
        )
    covered: set = set()
    for rc in sol.cycles:
        covered.update(rc.edge_multiset().keys())
    uncovered = tuple(e for e in g.distinct_edges() if e not in covered)
    value = max((rc.length for rc in sol.cycles), default=0)
    budget_ok = None if inst.budget is None else value <= inst.budget
    return VerificationReport(
        robot_reports=tuple(reports),
        uncovered=uncovered,
        value=value,
        budget_ok=budget_ok,
        robot_count_ok=len(sol.cycles) == inst.k,
    )
