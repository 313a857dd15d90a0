"""Transformations between MinSum/MinMax scheduling and other problems.

* SM2 to weighted Max-NAE-SAT: one clause per unordered split of a scenario,
  weighted so that the satisfied weight of a scenario equals the load of its
  least loaded machine.
* SM2 with scenarios of at most three jobs to weighted Max Cut.
* MM2 to two-machine vector scheduling.
* Hardness gadgets: Max Cut to SM2 and 3-Set Splitting to MM2.

All weights are exact :class:`~fractions.Fraction` values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import M1, Assignment, CapExceeded, Instance, ParseError, PreconditionError

NAE_R_CAP = 6

# Approximation ratios of the external SDP solvers the reductions feed. The
# solvers themselves are not part of this package.
GAMMA_NAE3 = 0.90871
GAMMA_NAE4 = Fraction(7, 8)
GAMMA_NAE_GENERAL = 0.74996
GAMMA_MAXCUT = 0.87856


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(tok: str, lineno: int = 0) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", lineno) from None


def _proc(inst: Instance, j: int) -> int:
    # ids above n are zero-time padding jobs
    return inst.proc[j - 1] if j <= inst.n else 0


def least_load(inst: Instance, part: Iterable[int], s: Iterable[int]) -> int:
    side = set(part)
    a = sum(_proc(inst, j) for j in s if j in side)
    b = sum(_proc(inst, j) for j in s if j not in side)
    return min(a, b)


# -- Max-NAE-SAT ---------------------------------------------------------------

def canonical_partitions(s: Sequence[int]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Each unordered split ``{A, rest}`` of ``s`` once, with the lowest id in ``A``."""
    jobs = sorted(s)
    first, others = jobs[0], jobs[1:]
    for mask in range(1 << len(others)):
        a = [first] + [j for t, j in enumerate(others) if mask >> t & 1]
        rest = [j for t, j in enumerate(others) if not mask >> t & 1]
        yield tuple(a), tuple(rest)


def _sum_of_mins(s: Sequence[int], inst: Instance) -> int:
    return sum(least_load(inst, a, s) for a, _ in canonical_partitions(s))


def nae_base_weight(s: Sequence[int], part: Iterable[int], inst: Instance) -> Fraction:
    """Unshifted weight of the clause for the split ``{part, s - part}``.

    ``s`` is a padded scenario; ids above ``inst.n`` have time 0.
    """
    n_clauses = 1 << (len(s) - 1)
    if n_clauses == 1:
        return Fraction(0)
    return Fraction(_sum_of_mins(s, inst), n_clauses - 1) - least_load(inst, part, s)


def nae_shift(s: Sequence[int], inst: Instance) -> Fraction:
    """Per-scenario constant that makes every clause weight nonnegative."""
    n_clauses = 1 << (len(s) - 1)
    if n_clauses == 1:
        return Fraction(0)
    p_s = sum(_proc(inst, j) for j in s)
    return Fraction(1, 4) * Fraction(n_clauses - 2, n_clauses - 1) * p_s


@dataclass(frozen=True)
class NaeClause:
    literals: tuple[int, ...]  # signed variable ids; negative means negated
    w: Fraction
    w_shifted: Fraction
    scenario_id: int  # 1-based

    def satisfied(self, truth: Sequence[bool]) -> bool:
        """``truth[v - 1]`` is the value of variable ``v``."""
        vals = {truth[abs(lit) - 1] == (lit > 0) for lit in self.literals}
        return len(vals) == 2


@dataclass(frozen=True)
class ClauseSet:
    n_jobs: int
    n_vars: int  # jobs plus shared zero-time padding variables
    r: int
    clauses: tuple[NaeClause, ...]
    shifts: tuple[Fraction, ...]  # K(S) per scenario

    @property
    def n_per_scenario(self) -> int:
        return 1 << (self.r - 1) if self.r else 0

    def scenario_weights(self, truth: Sequence[bool], shifted: bool = True) -> list[Fraction]:
        out = [Fraction(0)] * len(self.shifts)
        for c in self.clauses:
            if c.satisfied(truth):
                out[c.scenario_id - 1] += c.w_shifted if shifted else c.w
        return out

    def satisfied_weight(self, truth: Sequence[bool], shifted: bool = True) -> Fraction:
        return sum(self.scenario_weights(truth, shifted), Fraction(0))

    def truth_from_assignment(self, a: Assignment) -> list[bool]:
        """Machine 1 is true; padding variables are false."""
        return [m == M1 for m in a.side] + [False] * (self.n_vars - self.n_jobs)

    def assignment_from_truth(self, truth: Sequence[bool]) -> Assignment:
        return Assignment.from_sets(self.n_jobs, (v for v in range(1, self.n_jobs + 1) if truth[v - 1]))


def to_nae_sat(inst: Instance, r: int | None = None, cap: int = NAE_R_CAP) -> ClauseSet:
    """Weighted NAE clauses for SM2.

    Scenarios shorter than ``r`` (default: the largest scenario size) are
    padded with shared zero-time variables numbered ``n+1, n+2, ...``.
    """
    r = max(inst.r, r or 0)
    if r > cap:
        raise CapExceeded(f"NAE reduction needs r <= {cap}, instance has r = {r}")
    shortest = min((len(s) for s in inst.scenarios), default=r)
    n_vars = inst.n + (r - shortest)
    clauses, shifts = [], []
    for i, s in enumerate(inst.scenarios, 1):
        padded = tuple(s) + tuple(range(inst.n + 1, inst.n + 1 + r - len(s)))
        shift = nae_shift(padded, inst)
        shifts.append(shift)
        n_clauses = 1 << (r - 1)
        total_min = _sum_of_mins(padded, inst)
        for a, rest in canonical_partitions(padded):
            if n_clauses == 1:
                w = Fraction(0)
            else:
                w = Fraction(total_min, n_clauses - 1) - least_load(inst, a, padded)
            lits = tuple(sorted(list(a) + [-j for j in rest], key=abs))
            clauses.append(NaeClause(lits, w, w + shift, i))
    return ClauseSet(inst.n, n_vars, r, tuple(clauses), tuple(shifts))


def serialize_clauses(cs: ClauseSet) -> str:
    """Weighted DIMACS-like text; only shifted weights appear on clause lines."""
    lines = [f"p nae {cs.n_vars} {len(cs.clauses)} {cs.n_jobs} {cs.r}"]
    current = None
    for c in cs.clauses:
        if c.scenario_id != current:
            current = c.scenario_id
            lines.append(f"c scenario {current} shift {format_fraction(cs.shifts[current - 1])}")
        lines.append(" ".join(["nae", format_fraction(c.w_shifted), *map(str, c.literals), "0"]))
    return "\n".join(lines) + "\n"


def parse_clauses(text: str) -> ClauseSet:
    header = None
    clauses, shifts = [], []
    scenario = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks:
            continue
        if toks[0] == "p":
            if len(toks) != 6 or toks[1] != "nae":
                raise ParseError("expected 'p nae <vars> <clauses> <jobs> <r>'", lineno)
            header = [int(t) for t in toks[2:]]
        elif toks[0] == "c":
            if len(toks) >= 3 and toks[1] == "scenario":
                scenario = int(toks[2])
                shift = parse_fraction(toks[4], lineno) if len(toks) >= 5 else Fraction(0)
                shifts.append(shift)
        elif toks[0] == "nae":
            if toks[-1] != "0":
                raise ParseError("clause must end with 0", lineno)
            if scenario == 0:
                raise ParseError("clause before any 'c scenario' line", lineno)
            w_shifted = parse_fraction(toks[1], lineno)
            lits = tuple(int(t) for t in toks[2:-1])
            shift = shifts[-1]
            clauses.append(NaeClause(lits, w_shifted - shift, w_shifted, scenario))
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", lineno)
    if header is None:
        raise ParseError("missing 'p nae' header")
    n_vars, n_clauses, n_jobs, r = header
    if n_clauses != len(clauses):
        raise ParseError(f"header announces {n_clauses} clauses, found {len(clauses)}")
    return ClauseSet(n_jobs, n_vars, r, tuple(clauses), tuple(shifts))


# -- Max Cut -------------------------------------------------------------------

@dataclass(frozen=True)
class CutEdge:
    u: int
    v: int
    weight: Fraction
    scenario_id: int


@dataclass(frozen=True)
class CutGraph:
    n: int
    edges: tuple[CutEdge, ...]
    b_values: dict  # scenario id -> {job: b_job} for three-job scenarios

    @property
    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    def cut_weight(self, left: Sequence[bool]) -> Fraction:
        """``left[v - 1]`` tells which side vertex ``v`` is on."""
        return sum((e.weight for e in self.edges if left[e.u - 1] != left[e.v - 1]), Fraction(0))


def triple_b_values(inst: Instance, s: Sequence[int]) -> dict[int, int]:
    i, j, k = s
    pi, pj, pk = inst.p(i), inst.p(j), inst.p(k)
    return {i: min(pi, pj + pk), j: min(pj, pi + pk), k: min(pk, pi + pj)}


def to_maxcut3(inst: Instance) -> CutGraph:
    """Weighted multigraph whose cut weights equal summed least loads."""
    edges, bvals = [], {}
    for sid, s in enumerate(inst.scenarios, 1):
        if len(s) > 3:
            raise PreconditionError(
                f"Max Cut reduction needs scenarios of at most 3 jobs; scenario {sid} has {len(s)}"
            )
        if len(s) == 2:
            u, v = s
            edges.append(CutEdge(u, v, Fraction(min(inst.p(u), inst.p(v))), sid))
        elif len(s) == 3:
            b = triple_b_values(inst, s)
            bvals[sid] = b
            half = Fraction(sum(b.values()), 2)
            i, j, k = s
            for u, v, opposite in ((i, j, k), (j, k, i), (i, k, j)):
                edges.append(CutEdge(u, v, half - b[opposite], sid))
    return CutGraph(inst.n, tuple(edges), bvals)


def serialize_cut_graph(g: CutGraph) -> str:
    lines = [f"p cut {g.n} {len(g.edges)}"]
    current = None
    for e in g.edges:
        if e.scenario_id != current:
            current = e.scenario_id
            lines.append(f"c scenario {current}")
        lines.append(f"e {e.u} {e.v} {format_fraction(e.weight)}")
    return "\n".join(lines) + "\n"


def parse_cut_graph(text: str) -> CutGraph:
    n = m = None
    edges = []
    scenario = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks:
            continue
        if toks[0] == "p":
            if len(toks) != 4 or toks[1] != "cut":
                raise ParseError("expected 'p cut <n> <edges>'", lineno)
            n, m = int(toks[2]), int(toks[3])
        elif toks[0] == "c":
            if len(toks) >= 3 and toks[1] == "scenario":
                scenario = int(toks[2])
        elif toks[0] == "e":
            if len(toks) != 4:
                raise ParseError("expected 'e <u> <v> <weight>'", lineno)
            u, v = int(toks[1]), int(toks[2])
            if n is not None and not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range in edge {u} {v}", lineno)
            edges.append(CutEdge(u, v, parse_fraction(toks[3], lineno), scenario))
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", lineno)
    if n is None:
        raise ParseError("missing 'p cut' header")
    if m != len(edges):
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return CutGraph(n, tuple(edges), {})


# -- vector scheduling -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class VectorSet:
    vectors: np.ndarray  # shape (n, k), row j-1 belongs to job j
    m: int

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]

    def machine_loads(self, machines: Sequence[int]) -> np.ndarray:
        """Coordinate sums per machine; ``machines`` holds labels ``1..m``."""
        loads = np.zeros((self.m, self.d), dtype=np.int64)
        for row, mach in enumerate(machines):
            loads[mach - 1] += self.vectors[row]
        return loads

    def makespan(self, machines: Sequence[int]) -> int:
        loads = self.machine_loads(machines)
        return int(loads.max()) if loads.size else 0


def to_vector_scheduling(inst: Instance, m: int = 2) -> VectorSet:
    if m < 2:
        raise PreconditionError("vector scheduling needs at least 2 machines")
    vec = np.zeros((inst.n, inst.k), dtype=np.int64)
    for i, s in enumerate(inst.scenarios):
        for j in s:
            vec[j - 1, i] = inst.p(j)
    vec.setflags(write=False)
    return VectorSet(vec, m)


# -- hardness gadgets ------------------------------------------------------------

def gadget_from_maxcut(edges: Iterable[tuple[int, int]], n_vertices: int | None = None) -> Instance:
    """Unit job per vertex ``1..n``, one two-job scenario per edge."""
    edges = [tuple(e) for e in edges]
    seen = set()
    for u, v in edges:
        if u == v:
            raise PreconditionError(f"self loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise PreconditionError(f"parallel edge {u} {v}")
        seen.add(key)
    if n_vertices is None:
        n_vertices = max((max(e) for e in edges), default=0)
    return Instance((1,) * n_vertices, tuple(edges))


def gadget_from_set_splitting(sets: Iterable[Sequence[int]], n_objects: int | None = None) -> Instance:
    """Unit job per object ``1..n``, one scenario per three-element set."""
    sets = [tuple(s) for s in sets]
    for s in sets:
        if len(set(s)) != 3 or len(s) != 3:
            raise PreconditionError(f"set splitting gadget needs 3-element sets, got {s}")
    if n_objects is None:
        n_objects = max((max(s) for s in sets), default=0)
    return Instance((1,) * n_objects, tuple(sets))
