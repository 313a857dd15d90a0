"""Approximation algorithms and reduction-based solvers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from ._enum import argbest, bits_of
from .core import (
    M1,
    M2,
    MINSUM,
    Assignment,
    CapExceeded,
    Instance,
    PreconditionError,
    check_objective,
    eval_minmax,
    eval_minsum,
    evaluate,
)
from .reductions import NAE_R_CAP, ClauseSet, CutGraph, VectorSet, to_maxcut3, to_nae_sat

DERAND_R_CAP = 12
MAXCUT_CAP = 22
NAE_EXACT_CAP = 22

EXACT = "exact"
LOCAL_SEARCH = "local_search"
BACKENDS = (EXACT, LOCAL_SEARCH)


def check_backend(backend: str) -> str:
    b = str(backend).lower().replace("-", "_")
    if b in ("ls", "localsearch"):
        b = LOCAL_SEARCH
    if b not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    return b


# -- random assignment -------------------------------------------------------------

@dataclass(frozen=True)
class TrialResult:
    seed: int
    trial: int
    assignment: Assignment
    minsum: int
    minmax: int


def trial_bits(n: int, seed: int, trial: int) -> list[int]:
    """Fair coin per job, keyed only by ``(seed, trial, job index)``."""
    words = np.random.SeedSequence([seed & (2**64 - 1), trial]).generate_state(
        max(1, (n + 31) // 32), dtype=np.uint32
    )
    return [int(words[j // 32] >> (j % 32)) & 1 for j in range(n)]


def random_assign(inst: Instance, seed: int = 0, trials: int = 1, objective: str = MINSUM) -> TrialResult:
    """Best of ``trials`` independent uniform random assignments."""
    objective = check_objective(objective)
    if trials < 1:
        raise ValueError("trials must be positive")
    best = None
    best_val = None
    for t in range(trials):
        a = Assignment.from_bits(trial_bits(inst.n, seed, t))
        val = evaluate(a, inst, objective)
        if best_val is None or val < best_val:
            best, best_val = TrialResult(seed, t, a, eval_minsum(a, inst), eval_minmax(a, inst)), val
    return best


# -- derandomization by conditional expectations -------------------------------------

def _subset_sums(values: Sequence[int]) -> list[int]:
    sums = [0]
    for v in values:
        sums = sums + [x + v for x in sums]
    return sums


def _expected_max(load1: int, load2: int, free: Sequence[int]) -> Fraction:
    total = sum(free)
    sums = _subset_sums(free)
    acc = sum(max(load1 + x, load2 + total - x) for x in sums)
    return Fraction(acc, len(sums))


def conditional_minsum(inst: Instance, fixed: dict[int, int]) -> Fraction:
    """Expected sum of makespans with ``fixed`` jobs placed and the rest random."""
    out = Fraction(0)
    for s in inst.scenarios:
        l1 = sum(inst.p(j) for j in s if fixed.get(j) == M1)
        l2 = sum(inst.p(j) for j in s if fixed.get(j) == M2)
        out += _expected_max(l1, l2, [inst.p(j) for j in s if j not in fixed])
    return out


def derandomized_assign(inst: Instance, cap: int = DERAND_R_CAP) -> Assignment:
    """Fix jobs in id order, each on the machine with the smaller conditional expectation.

    The expectation never increases, so the result is no worse than the
    expected MinSum value of the uniform random assignment.
    """
    if inst.r > cap:
        raise CapExceeded(f"derandomization needs r <= {cap}, instance has r = {inst.r}")
    containing = [[] for _ in range(inst.n + 1)]
    for i, s in enumerate(inst.scenarios):
        for j in s:
            containing[j].append(i)
    fixed: dict[int, int] = {}

    def local(j: int) -> Fraction:
        acc = Fraction(0)
        for i in containing[j]:
            s = inst.scenarios[i]
            l1 = sum(inst.p(x) for x in s if fixed.get(x) == M1)
            l2 = sum(inst.p(x) for x in s if fixed.get(x) == M2)
            acc += _expected_max(l1, l2, [inst.p(x) for x in s if x not in fixed])
        return acc

    for j in inst.jobs:
        fixed[j] = M1
        on1 = local(j)
        fixed[j] = M2
        on2 = local(j)
        fixed[j] = M1 if on1 <= on2 else M2
    return Assignment(tuple(fixed[j] for j in inst.jobs))


# -- Max Cut back ends -----------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    side: tuple[str, ...]  # "L" or "R" per vertex
    weight: Fraction

    @property
    def left(self) -> list[bool]:
        return [s == "L" for s in self.side]


def _scaled(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    den = reduce(math.lcm, (Fraction(w).denominator for w in weights), 1)
    return [int(Fraction(w) * den) for w in weights], den


def _cut_from_bits(g: CutGraph, bits: Sequence[int]) -> Cut:
    side = tuple("R" if b else "L" for b in bits)
    return Cut(side, g.cut_weight([b == 0 for b in bits]))


def exact_maxcut(g: CutGraph, cap: int = MAXCUT_CAP) -> Cut:
    """Heaviest cut by exhaustive search with vertex 1 on the left."""
    n = g.n
    if n > cap:
        raise CapExceeded(f"exact Max Cut needs at most {cap} vertices, graph has {n}")
    if n == 0:
        return Cut((), Fraction(0))
    w, _ = _scaled([e.weight for e in g.edges])
    w = np.array(w, dtype=np.int64)
    us = np.array([e.u - 1 for e in g.edges], dtype=np.int64)
    vs = np.array([e.v - 1 for e in g.edges], dtype=np.int64)

    def score(free_bits):
        bits = np.hstack([np.zeros((free_bits.shape[0], 1), dtype=np.int64), free_bits])
        if not len(w):
            return np.zeros(bits.shape[0], dtype=np.int64)
        return (bits[:, us] ^ bits[:, vs]) @ w

    idx, _ = argbest(n - 1, score, maximize=True, width_hint=max(len(g.edges), n))
    return _cut_from_bits(g, [0] + bits_of(idx, n - 1))


def local_search_cut(g: CutGraph, seed: int = 0) -> Cut:
    """Single-vertex flips from a random start until no flip helps."""
    n = g.n
    rng = np.random.default_rng(seed & (2**64 - 1))
    bits = [int(b) for b in rng.integers(0, 2, size=n)]
    w, _ = _scaled([e.weight for e in g.edges])
    adj = [[] for _ in range(n)]
    for e, we in zip(g.edges, w):
        adj[e.u - 1].append((e.v - 1, we))
        adj[e.v - 1].append((e.u - 1, we))
    improved = True
    while improved:
        improved = False
        for v in range(n):
            gain = sum(we if bits[u] == bits[v] else -we for u, we in adj[v])
            if gain > 0:
                bits[v] ^= 1
                improved = True
    return _cut_from_bits(g, bits)


def solve_sm2_via_cut(inst: Instance, backend: str = EXACT, seed: int = 0, cap: int = MAXCUT_CAP) -> Assignment:
    backend = check_backend(backend)
    if inst.r > 3:
        raise PreconditionError(f"Max Cut route needs scenarios of at most 3 jobs, instance has r = {inst.r}")
    g = to_maxcut3(inst)
    cut = exact_maxcut(g, cap) if backend == EXACT else local_search_cut(g, seed)
    return Assignment.from_bits([0 if left else 1 for left in cut.left]).canonical()


# -- Max-NAE-SAT back ends ---------------------------------------------------------------

def _clause_arrays(cs: ClauseSet):
    w, _ = _scaled([c.w_shifted for c in cs.clauses])
    return w, [(np.array([abs(x) - 1 for x in c.literals]), np.array([x > 0 for x in c.literals])) for c in cs.clauses]


def exact_max_nae(cs: ClauseSet, cap: int = NAE_EXACT_CAP) -> list[bool]:
    """Truth assignment of maximum satisfied shifted weight; variable 1 is true."""
    nv = cs.n_vars
    if nv > cap:
        raise CapExceeded(f"exact Max-NAE-SAT needs at most {cap} variables, got {nv}")
    if nv == 0:
        return []
    w, lits = _clause_arrays(cs)

    def score(free_bits):
        # bit 0 is true; variable 1 pinned true by complement symmetry
        truth = np.hstack([np.ones((free_bits.shape[0], 1), dtype=bool), free_bits == 0])
        total = np.zeros(truth.shape[0], dtype=np.int64)
        for wc, (cols, signs) in zip(w, lits):
            vals = truth[:, cols] == signs
            sat = vals.any(axis=1) & ~vals.all(axis=1)
            total += wc * sat
        return total

    idx, _ = argbest(nv - 1, score, maximize=True, width_hint=max(len(cs.clauses), nv))
    return [True] + [b == 0 for b in bits_of(idx, nv - 1)]


def local_search_nae(cs: ClauseSet, seed: int = 0) -> list[bool]:
    """Single-variable flips from a random start until no flip helps."""
    rng = np.random.default_rng(seed & (2**64 - 1))
    truth = [bool(b) for b in rng.integers(0, 2, size=cs.n_vars)]
    w, _ = _scaled([c.w_shifted for c in cs.clauses])
    touching = [[] for _ in range(cs.n_vars)]
    for ci, c in enumerate(cs.clauses):
        for v in {abs(x) - 1 for x in c.literals}:
            touching[v].append(ci)

    def local(v):
        return sum(w[ci] for ci in touching[v] if cs.clauses[ci].satisfied(truth))

    improved = True
    while improved:
        improved = False
        for v in range(cs.n_vars):
            before = local(v)
            truth[v] = not truth[v]
            if local(v) > before:
                improved = True
            else:
                truth[v] = not truth[v]
    return truth


def solve_sm2_via_nae(
    inst: Instance,
    backend: str = EXACT,
    seed: int = 0,
    cap: int = NAE_EXACT_CAP,
    r_cap: int = NAE_R_CAP,
) -> Assignment:
    backend = check_backend(backend)
    cs = to_nae_sat(inst, cap=r_cap)
    truth = exact_max_nae(cs, cap) if backend == EXACT else local_search_nae(cs, seed)
    return cs.assignment_from_truth(truth).canonical()


# -- vector scheduling heuristic -------------------------------------------------------------

def vector_list_schedule(vs: VectorSet) -> tuple[int, ...]:
    """Greedy list scheduling, largest infinity-norm first.

    Each vector goes to the machine giving the smallest overall makespan,
    then the smallest load on the chosen machine, then the lowest index.
    """
    vec = vs.vectors
    norms = vec.max(axis=1) if vs.d else np.zeros(vs.n, dtype=np.int64)
    order = sorted(range(vs.n), key=lambda j: (-int(norms[j]), j))
    loads = np.zeros((vs.m, vs.d), dtype=np.int64)
    peak = np.zeros(vs.m, dtype=np.int64)
    machines = [0] * vs.n
    for j in order:
        best = None
        for q in range(vs.m):
            own = int((loads[q] + vec[j]).max()) if vs.d else 0
            overall = max([own] + [int(peak[o]) for o in range(vs.m) if o != q])
            key = (overall, own, q)
            if best is None or key < best:
                best = key
        q = best[2]
        loads[q] += vec[j]
        peak[q] = best[1]
        machines[j] = q + 1
    return tuple(machines)


def vector_assignment(inst: Instance, vs: VectorSet) -> Assignment:
    if vs.m != 2:
        raise PreconditionError("only two-machine vector schedules map to assignments")
    return Assignment(vector_list_schedule(vs)).canonical()
