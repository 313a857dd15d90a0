"""Exact MinMax for instances whose scenarios all hold exactly two jobs.

Jobs are vertices, scenarios are edges weighted ``p_j + p_k``. Edges are
inserted heaviest first while components are grown and two-colored. The
first edge that closes an odd cycle stops the run: every remaining edge is
no heavier, and no coloring can avoid a monochromatic edge on that cycle.

Component bookkeeping uses explicit member lists and relabels the smaller
side on every merge, so each vertex is relabeled at most ``log2 n`` times.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import M1, M2, MINMAX, Assignment, Instance, PreconditionError
from .oracle import Optimum


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: int
    scenario: int


@dataclass(frozen=True)
class ConflictGraph:
    n: int
    edges: tuple[Edge, ...]  # heaviest first, ties by scenario index

    @classmethod
    def from_instance(cls, inst: Instance) -> ConflictGraph:
        edges = []
        for i, s in enumerate(inst.scenarios):
            if len(s) != 2:
                raise PreconditionError(
                    f"pairs algorithm needs every scenario to have exactly 2 jobs; "
                    f"scenario {i + 1} has {len(s)}"
                )
            u, v = s
            edges.append(Edge(u, v, inst.p(u) + inst.p(v), i))
        edges.sort(key=lambda e: (-e.weight, e.scenario))
        return cls(inst.n, tuple(edges))


@dataclass
class ColoredComponents:
    color: list[int]
    label: list[int]
    members: dict[int, list[int]]
    relabels: list[int]
    processed: list[Edge] = field(default_factory=list)
    stop_edge: Optional[Edge] = None

    @classmethod
    def singletons(cls, n: int) -> ColoredComponents:
        # index 0 unused so vertices are job ids
        return cls(
            color=[M1] * (n + 1),
            label=list(range(n + 1)),
            members={j: [j] for j in range(1, n + 1)},
            relabels=[0] * (n + 1),
        )

    def _absorb(self, small: int, big: int, invert: bool) -> None:
        for x in self.members[small]:
            if invert:
                self.color[x] = M2 if self.color[x] == M1 else M1
            self.label[x] = big
            self.relabels[x] += 1
        self.members[big].extend(self.members.pop(small))

    def insert(self, e: Edge) -> bool:
        """Process one edge; return False when it closes an odd cycle."""
        j, k = e.u, e.v
        same_color = self.color[j] == self.color[k]
        same_comp = self.label[j] == self.label[k]
        if same_color and same_comp:
            self.stop_edge = e
            return False
        self.processed.append(e)
        if not same_comp:
            a, b = self.label[j], self.label[k]
            if len(self.members[a]) > len(self.members[b]):
                a, b = b, a
            self._absorb(a, b, invert=same_color)
        return True

    def assignment(self) -> Assignment:
        return Assignment(tuple(self.color[1:]))


def color_components(inst: Instance) -> ColoredComponents:
    graph = ConflictGraph.from_instance(inst)
    comps = ColoredComponents.singletons(inst.n)
    for e in graph.edges:
        if not comps.insert(e):
            break
    return comps


def solve_pairs(inst: Instance) -> Optimum:
    comps = color_components(inst)
    # only jobs that occur in some scenario can set a makespan
    p_max = max((inst.p(j) for s in inst.scenarios for j in s), default=0)
    value = p_max
    if comps.stop_edge is not None:
        value = max(value, comps.stop_edge.weight)
    witness = comps.assignment().canonical()
    return Optimum(value, witness, MINMAX)
