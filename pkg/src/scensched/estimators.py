"""scikit-learn style wrappers around the solvers and reductions.

A scheduler is fitted on one :class:`~scensched.core.Instance` and exposes
the chosen assignment as ``assignment_``; ``predict`` returns the machine
label (1 or 2) of every job. Hyperparameters are constructor arguments, so
``get_params``/``set_params``/``clone`` work as usual.

    >>> from scensched import PairsScheduler, parse_instance
    >>> inst = parse_instance("jobs 3\\np 1 1 1\\nscenarios 2\\nS 1 2\\nS 2 3\\n")
    >>> PairsScheduler().fit(inst).value_
    1
"""
from __future__ import annotations

import os
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import oracle, pairs, reductions, solvers
from .core import (
    MINMAX,
    MINSUM,
    Assignment,
    Instance,
    PreconditionError,
    check_objective,
    eval_minmax,
    eval_minsum,
    evaluate,
    parse_instance,
    read_instance,
)


def check_instance(X) -> Instance:
    """Coerce ``X`` to an :class:`Instance`.

    Accepts an instance, instance text, a path to an instance file, or a
    ``(proc, scenarios)`` pair.
    """
    if isinstance(X, Instance):
        return X
    if isinstance(X, bytes):
        return parse_instance(X)
    if isinstance(X, str) and ("\n" in X or X.lstrip().startswith("jobs")):
        return parse_instance(X)
    if isinstance(X, (str, os.PathLike)):
        return read_instance(X)
    if isinstance(X, tuple) and len(X) == 2:
        return Instance(tuple(X[0]), tuple(tuple(s) for s in X[1]))
    raise TypeError(f"cannot interpret {type(X).__name__} as a scheduling instance")


def check_seed(random_state) -> int:
    if random_state is None:
        return 0
    if isinstance(random_state, (int, np.integer)) and not isinstance(random_state, bool):
        return int(random_state)
    raise TypeError("random_state must be an int seed or None")


class BaseScheduler(BaseEstimator):
    """Common ``fit``/``predict`` plumbing; subclasses implement ``_solve``."""

    supported_objectives = (MINMAX, MINSUM)

    def _solve(self, inst: Instance) -> Assignment:
        raise NotImplementedError

    def _objective(self) -> str:
        return check_objective(getattr(self, "objective", MINSUM))

    def fit(self, X, y=None):
        inst = check_instance(X)
        objective = self._objective()
        if objective not in self.supported_objectives:
            raise ValueError(f"{type(self).__name__} does not optimize {objective}")
        a = self._solve(inst)
        self.assignment_ = a
        self.minmax_ = eval_minmax(a, inst)
        self.minsum_ = eval_minsum(a, inst)
        self.value_ = self.minmax_ if objective == MINMAX else self.minsum_
        self.n_jobs_in_ = inst.n
        return self

    def predict(self, X=None) -> np.ndarray:
        check_is_fitted(self, "assignment_")
        if X is not None and check_instance(X).n != self.n_jobs_in_:
            raise ValueError(f"fitted on {self.n_jobs_in_} jobs, got {check_instance(X).n}")
        return np.array(self.assignment_.side, dtype=np.int64)

    def fit_predict(self, X, y=None) -> np.ndarray:
        return self.fit(X).predict()

    def score(self, X, y=None) -> float:
        """Negated objective of the fitted assignment on ``X`` (higher is better)."""
        check_is_fitted(self, "assignment_")
        return -float(evaluate(self.assignment_, check_instance(X), self._objective()))


class BruteForceScheduler(BaseScheduler):
    def __init__(self, objective: str = MINMAX, cap: int = oracle.BRUTE_FORCE_CAP):
        self.objective = objective
        self.cap = cap

    def _solve(self, inst):
        self.optimum_ = oracle.brute_force(inst, self.objective, self.cap)
        return self.optimum_.witness


class UnitDPScheduler(BaseScheduler):
    def __init__(self, objective: str = MINMAX, cap: int = oracle.UNIT_DP_CAP):
        self.objective = objective
        self.cap = cap

    def _solve(self, inst):
        self.optimum_ = oracle.unit_dp(inst, self.objective, self.cap)
        return self.optimum_.witness


class PairsScheduler(BaseScheduler):
    """Exact MinMax when every scenario holds exactly two jobs."""

    supported_objectives = (MINMAX,)

    def __init__(self, objective: str = MINMAX):
        self.objective = objective

    def _solve(self, inst):
        self.optimum_ = pairs.solve_pairs(inst)
        return self.optimum_.witness


class RandomScheduler(BaseScheduler):
    def __init__(self, objective: str = MINSUM, trials: int = 1, random_state=None):
        self.objective = objective
        self.trials = trials
        self.random_state = random_state

    def _solve(self, inst):
        self.trial_ = solvers.random_assign(inst, check_seed(self.random_state), self.trials, self.objective)
        return self.trial_.assignment


class DerandomizedScheduler(BaseScheduler):
    supported_objectives = (MINSUM,)

    def __init__(self, objective: str = MINSUM, cap: int = solvers.DERAND_R_CAP):
        self.objective = objective
        self.cap = cap

    def _solve(self, inst):
        self.expected_random_ = oracle.expected_random_minsum(inst, cap=max(self.cap, inst.r))
        return solvers.derandomized_assign(inst, self.cap)


class MaxCutScheduler(BaseScheduler):
    """MinSum through the weighted Max Cut reduction (scenarios of at most 3 jobs)."""

    supported_objectives = (MINSUM,)

    def __init__(self, objective: str = MINSUM, backend: str = solvers.EXACT, random_state=None,
                 cap: int = solvers.MAXCUT_CAP):
        self.objective = objective
        self.backend = backend
        self.random_state = random_state
        self.cap = cap

    def _solve(self, inst):
        return solvers.solve_sm2_via_cut(inst, self.backend, check_seed(self.random_state), self.cap)


class NaeSatScheduler(BaseScheduler):
    """MinSum through the weighted Max-NAE-SAT reduction."""

    supported_objectives = (MINSUM,)

    def __init__(self, objective: str = MINSUM, backend: str = solvers.EXACT, random_state=None,
                 cap: int = solvers.NAE_EXACT_CAP, r_cap: int = reductions.NAE_R_CAP):
        self.objective = objective
        self.backend = backend
        self.random_state = random_state
        self.cap = cap
        self.r_cap = r_cap

    def _solve(self, inst):
        return solvers.solve_sm2_via_nae(inst, self.backend, check_seed(self.random_state), self.cap, self.r_cap)


class VectorListScheduler(BaseScheduler):
    supported_objectives = (MINMAX,)

    def __init__(self, objective: str = MINMAX):
        self.objective = objective

    def _solve(self, inst):
        vs = reductions.to_vector_scheduling(inst, 2)
        return solvers.vector_assignment(inst, vs)


class _Reduction(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        check_instance(X)
        return self


class NaeSatReduction(_Reduction):
    def __init__(self, r=None, cap: int = reductions.NAE_R_CAP):
        self.r = r
        self.cap = cap

    def transform(self, X) -> reductions.ClauseSet:
        return reductions.to_nae_sat(check_instance(X), self.r, self.cap)


class MaxCutReduction(_Reduction):
    def transform(self, X) -> reductions.CutGraph:
        return reductions.to_maxcut3(check_instance(X))


class VectorEmbedding(_Reduction):
    def __init__(self, m: int = 2):
        self.m = m

    def transform(self, X) -> reductions.VectorSet:
        return reductions.to_vector_scheduling(check_instance(X), self.m)


# CLI name -> (estimator class, fixed keyword arguments)
ALGORITHMS = {
    "brute": (BruteForceScheduler, {}),
    "unit_dp": (UnitDPScheduler, {}),
    "pairs": (PairsScheduler, {}),
    "random": (RandomScheduler, {}),
    "derand": (DerandomizedScheduler, {}),
    "cut_exact": (MaxCutScheduler, {"backend": solvers.EXACT}),
    "cut_ls": (MaxCutScheduler, {"backend": solvers.LOCAL_SEARCH}),
    "nae_exact": (NaeSatScheduler, {"backend": solvers.EXACT}),
    "nae_ls": (NaeSatScheduler, {"backend": solvers.LOCAL_SEARCH}),
    "vector_list": (VectorListScheduler, {}),
}


def make_scheduler(alg: str, objective: str, seed: int = 0, trials: int = 1, caps: dict | None = None) -> BaseScheduler:
    """Build the estimator behind a CLI algorithm name.

    ``caps`` may hold ``brute``, ``unit_k``, ``nae_r`` and ``cut_n``.
    """
    if alg not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {alg!r}; choose from {', '.join(ALGORITHMS)}")
    objective = check_objective(objective)
    cls, fixed = ALGORITHMS[alg]
    if objective not in cls.supported_objectives:
        raise ValueError(f"algorithm {alg!r} does not optimize {objective}")
    caps = caps or {}
    params = dict(fixed, objective=objective)
    names = cls._get_param_names()
    if "random_state" in names:
        params["random_state"] = seed
    if "trials" in names:
        params["trials"] = trials
    cap_key = {"brute": "brute", "unit_dp": "unit_k", "cut_exact": "cut_n", "nae_exact": "brute"}.get(alg)
    if cap_key and caps.get(cap_key) is not None:
        params["cap"] = caps[cap_key]
    if "r_cap" in names and caps.get("nae_r") is not None:
        params["r_cap"] = caps["nae_r"]
    return cls(**params)


def ratio(value: int, opt: int) -> Fraction:
    if opt == 0:
        if value == 0:
            return Fraction(1)
        raise PreconditionError("positive value against a zero optimum")
    return Fraction(value, opt)
