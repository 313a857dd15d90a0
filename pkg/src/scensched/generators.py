"""Seeded instance generators.

Every generator is a pure function of its arguments: the same parameters and
seed give the same instance. Scenario members are drawn without replacement
and listed in increasing order; no scenario is empty.
"""
from __future__ import annotations

import itertools

import numpy as np

from .core import Instance, PreconditionError
from .reductions import gadget_from_maxcut, gadget_from_set_splitting

KINDS = ("random", "pairs", "triples", "unit", "maxcut_gadget", "setsplit_gadget")


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed & (2**64 - 1))


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _scenarios(rng, n: int, k: int, lo: int, hi: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for _ in range(k):
        size = int(rng.integers(lo, hi + 1))
        members = rng.choice(n, size=size, replace=False) + 1
        out.append(tuple(sorted(int(j) for j in members)))
    return tuple(out)


def random_instance(n: int, k: int, r: int, pmax: int, seed: int = 0, pmin: int = 0) -> Instance:
    """Times uniform in ``[pmin, pmax]``; scenario sizes uniform in ``[1, min(r, n)]``."""
    _check(n >= 1 and k >= 0 and r >= 1, "random instance needs n >= 1, k >= 0, r >= 1")
    _check(0 <= pmin <= pmax, "need 0 <= pmin <= pmax")
    rng = _rng(seed)
    proc = tuple(int(p) for p in rng.integers(pmin, pmax + 1, size=n))
    return Instance(proc, _scenarios(rng, n, k, 1, min(r, n)))


def pairs_instance(n: int, k: int, pmax: int, seed: int = 0) -> Instance:
    _check(n >= 2, "pair scenarios need n >= 2")
    rng = _rng(seed)
    proc = tuple(int(p) for p in rng.integers(0, pmax + 1, size=n))
    return Instance(proc, _scenarios(rng, n, k, 2, 2))


def triples_instance(n: int, k: int, pmax: int, seed: int = 0) -> Instance:
    _check(n >= 3, "triple scenarios need n >= 3")
    rng = _rng(seed)
    proc = tuple(int(p) for p in rng.integers(0, pmax + 1, size=n))
    return Instance(proc, _scenarios(rng, n, k, 3, 3))


def unit_instance(n: int, k: int, r: int | None = None, seed: int = 0) -> Instance:
    _check(n >= 1 and k >= 0, "unit instance needs n >= 1 and k >= 0")
    rng = _rng(seed)
    return Instance((1,) * n, _scenarios(rng, n, k, 1, min(r or n, n)))


def random_graph(n: int, m: int, seed: int = 0) -> list[tuple[int, int]]:
    """``m`` distinct edges on vertices ``1..n``, chosen uniformly."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    _check(0 <= m <= len(pairs), f"a simple graph on {n} vertices has at most {len(pairs)} edges")
    rng = _rng(seed)
    pick = sorted(rng.choice(len(pairs), size=m, replace=False).tolist())
    return [pairs[i] for i in pick]


def random_triple_family(n: int, count: int, seed: int = 0) -> list[tuple[int, int, int]]:
    _check(n >= 3 and count >= 0, "triple family needs n >= 3")
    rng = _rng(seed)
    return [tuple(sorted(int(x) for x in rng.choice(n, size=3, replace=False) + 1)) for _ in range(count)]


def generate(kind: str, n: int = 8, k: int = 4, r: int = 3, pmax: int = 9, seed: int = 0,
             source: list | None = None) -> Instance:
    """Dispatch on ``kind``; gadget kinds use ``source`` when given, else a random source."""
    if kind == "random":
        return random_instance(n, k, r, pmax, seed)
    if kind == "pairs":
        return pairs_instance(n, k, pmax, seed)
    if kind == "triples":
        return triples_instance(n, k, pmax, seed)
    if kind == "unit":
        return unit_instance(n, k, r, seed)
    if kind == "maxcut_gadget":
        edges = source if source is not None else random_graph(n, k, seed)
        return gadget_from_maxcut(edges, None if source is not None else n)
    if kind == "setsplit_gadget":
        sets = source if source is not None else random_triple_family(n, k, seed)
        return gadget_from_set_splitting(sets, None if source is not None else n)
    raise PreconditionError(f"unknown instance kind {kind!r}; choose from {', '.join(KINDS)}")
