"""Ground-truth solvers and exact analysis of the uniform random assignment.

Everything here is exact: integer objectives, and :class:`fractions.Fraction`
for expectations.
"""
from __future__ import annotations

import itertools
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from ._enum import argbest, bits_of, iter_bit_chunks
from .core import (
    M1,
    M2,
    MINMAX,
    Assignment,
    CapExceeded,
    Instance,
    PreconditionError,
    check_objective,
    evaluate,
)

BRUTE_FORCE_CAP = 24
UNIT_DP_CAP = 10
PROFILE_CAP = 20


@dataclass(frozen=True)
class Optimum:
    value: int
    witness: Assignment
    objective: str = MINMAX


@dataclass(frozen=True)
class JobType:
    """Unit jobs sharing the same set of scenarios (by 0-based scenario index)."""

    signature: frozenset
    jobs: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.jobs)


class RandomProfile(NamedTuple):
    expected_min: Fraction
    expected_max: Fraction


def incidence(inst: Instance, jobs: Sequence[int] | None = None) -> np.ndarray:
    """Matrix with ``[row, i] = p_j`` when job ``jobs[row]`` is in scenario ``i``."""
    jobs = list(inst.jobs) if jobs is None else list(jobs)
    row = {j: t for t, j in enumerate(jobs)}
    mat = np.zeros((len(jobs), inst.k), dtype=np.int64)
    for i, s in enumerate(inst.scenarios):
        for j in s:
            if j in row:
                mat[row[j], i] = inst.proc[j - 1]
    return mat


def _reduce(makespans: np.ndarray, objective: str) -> np.ndarray:
    if makespans.shape[1] == 0:
        return np.zeros(makespans.shape[0], dtype=np.int64)
    if objective == MINMAX:
        return makespans.max(axis=1)
    return makespans.sum(axis=1)


def brute_force(inst: Instance, objective: str = MINMAX, cap: int = BRUTE_FORCE_CAP) -> Optimum:
    """Exhaustive search over the ``2**(n-1)`` assignments with job 1 on M1.

    Ties go to the lexicographically smallest machine string.
    """
    objective = check_objective(objective)
    n = inst.n
    if n > cap:
        raise CapExceeded(f"brute force needs n <= {cap}, instance has n = {n}")
    if n == 0:
        return Optimum(0, Assignment(()), objective)
    free = list(range(2, n + 1))
    mat = incidence(inst, free)
    scen_total = np.array([inst.total(s) for s in inst.scenarios], dtype=np.int64)

    def score(bits):
        load2 = bits @ mat
        load1 = scen_total - load2
        return _reduce(np.maximum(load1, load2), objective)

    idx, val = argbest(n - 1, score, width_hint=inst.k)
    witness = Assignment.from_bits([0] + bits_of(idx, n - 1))
    return Optimum(val, witness, objective)


def job_types(inst: Instance) -> list[JobType]:
    groups: "OrderedDict[frozenset, list[int]]" = OrderedDict()
    member = [set() for _ in range(inst.n + 1)]
    for i, s in enumerate(inst.scenarios):
        for j in s:
            member[j].add(i)
    for j in inst.jobs:
        groups.setdefault(frozenset(member[j]), []).append(j)
    return [JobType(sig, tuple(js)) for sig, js in groups.items()]


def unit_dp(inst: Instance, objective: str = MINMAX, cap: int = UNIT_DP_CAP) -> Optimum:
    """Exact solver for unit jobs and few scenarios.

    Jobs with the same scenario membership are interchangeable, so only the
    number of each type placed on machine 1 matters. All count vectors are
    enumerated; there are at most ``(n+1)**(2**k)`` of them.
    """
    objective = check_objective(objective)
    if any(p != 1 for p in inst.proc):
        raise PreconditionError("unit_dp requires every processing time to be 1")
    if inst.k > cap:
        raise CapExceeded(f"unit_dp needs k <= {cap}, instance has k = {inst.k}")
    types = job_types(inst)
    if not types:
        return Optimum(0, Assignment(()), objective)
    member = np.zeros((len(types), inst.k), dtype=np.int64)
    for t, jt in enumerate(types):
        for i in jt.signature:
            member[t, i] = 1
    sizes = np.array([len(s) for s in inst.scenarios], dtype=np.int64)

    best_val, best_counts = None, None
    ranges = [range(jt.count + 1) for jt in types]
    combos = itertools.product(*ranges)
    while True:
        block = list(itertools.islice(combos, 1 << 16))
        if not block:
            break
        counts = np.array(block, dtype=np.int64)
        on1 = counts @ member
        vals = _reduce(np.maximum(on1, sizes - on1), objective)
        i = int(np.argmin(vals))
        if best_val is None or vals[i] < best_val:
            best_val, best_counts = int(vals[i]), block[i]

    side = [M2] * inst.n
    for jt, c in zip(types, best_counts):
        for j in jt.jobs[:c]:
            side[j - 1] = M1
    witness = Assignment(tuple(side)).canonical()
    return Optimum(best_val, witness, objective)


def exact_random_profile(s: Sequence[int], inst: Instance, cap: int = PROFILE_CAP) -> RandomProfile:
    """Exact expected least and largest load of scenario ``s`` under a fair coin per job."""
    s = list(s)
    if len(s) > cap:
        raise CapExceeded(f"random profile needs |S| <= {cap}, got {len(s)}")
    p = np.array([inst.proc[j - 1] for j in s], dtype=np.int64)
    total = int(p.sum())
    sum_min = 0
    for _, bits in iter_bit_chunks(len(s)):
        load2 = bits @ p
        sum_min += int(np.minimum(load2, total - load2).sum())
    outcomes = 1 << len(s)
    e_min = Fraction(sum_min, outcomes)
    return RandomProfile(e_min, total - e_min)


def expected_random_minsum(inst: Instance, cap: int = PROFILE_CAP) -> Fraction:
    """Expected sum of makespans of the uniform random assignment."""
    return sum((exact_random_profile(s, inst, cap).expected_max for s in inst.scenarios), Fraction(0))


def check_optimum(opt: Optimum, inst: Instance) -> bool:
    return evaluate(opt.witness, inst, opt.objective) == opt.value
