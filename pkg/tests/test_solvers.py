import random
import statistics
from fractions import Fraction

import pytest

from scensched.core import Assignment, Instance, PreconditionError, CapExceeded, eval_minmax, eval_minsum
from scensched.generators import pairs_instance, random_instance, triples_instance
from scensched.oracle import brute_force, exact_random_profile, expected_random_minsum
from scensched.reductions import CutEdge, CutGraph, to_maxcut3, to_nae_sat, to_vector_scheduling
from scensched.solvers import (
    derandomized_assign,
    exact_max_nae,
    exact_maxcut,
    local_search_cut,
    local_search_nae,
    random_assign,
    solve_sm2_via_cut,
    solve_sm2_via_nae,
    trial_bits,
    vector_assignment,
    vector_list_schedule,
)

TWO_UNIT = Instance((1, 1), ((1, 2),))


def _graph(n, edges):
    return CutGraph(n, tuple(CutEdge(u, v, Fraction(w), 1) for u, v, w in edges), {})


def test_tight_two_job_instance():
    assert exact_random_profile((1, 2), TWO_UNIT).expected_max == Fraction(3, 2)
    assert brute_force(TWO_UNIT, "minsum").value == 1
    values = [random_assign(TWO_UNIT, seed=s).minsum for s in range(4000)]
    mean = statistics.fmean(values)
    sigma = 0.5 / 4000**0.5
    assert abs(mean - 1.5) <= 3 * sigma


def test_random_assign_example(example):
    for seed in range(20):
        assert random_assign(example, seed=seed, trials=64).minsum == 5


def test_random_assign_empty():
    res = random_assign(Instance((), ()), seed=3, trials=5)
    assert res.assignment == Assignment(())
    assert res.minsum == res.minmax == 0


def test_random_assign_is_reproducible(example):
    a = random_assign(example, seed=7, trials=50)
    b = random_assign(example, seed=7, trials=50)
    assert a == b
    # trials are keyed independently of how many are run
    assert trial_bits(3, 7, a.trial) == [m - 1 for m in a.assignment.side]


def test_random_assign_picks_first_best_trial(example):
    res = random_assign(example, seed=11, trials=30, objective="minmax")
    vals = [eval_minmax(Assignment.from_bits(trial_bits(3, 11, t)), example) for t in range(30)]
    assert res.trial == vals.index(min(vals))
    with pytest.raises(ValueError):
        random_assign(example, trials=0)


def test_trial_bits_roughly_fair():
    bits = [b for t in range(200) for b in trial_bits(64, 5, t)]
    assert 0.45 < sum(bits) / len(bits) < 0.55


def test_derandomized_examples(example):
    a = derandomized_assign(TWO_UNIT)
    assert eval_minsum(a, TWO_UNIT) == 1
    assert eval_minsum(derandomized_assign(example), example) == 5
    single = Instance((6,), ((1,),))
    assert eval_minsum(derandomized_assign(single), single) == 6


def test_derandomized_cap():
    inst = Instance((1,) * 13, (tuple(range(1, 14)),))
    with pytest.raises(CapExceeded):
        derandomized_assign(inst)


@pytest.mark.parametrize("seed", range(40))
def test_derandomized_dominates_expectation(seed):
    rng = random.Random(seed)
    inst = random_instance(rng.randint(1, 12), rng.randint(1, 8), rng.randint(1, 6), 9, seed)
    got = eval_minsum(derandomized_assign(inst), inst)
    assert got <= expected_random_minsum(inst)
    assert got <= Fraction(3, 2) * brute_force(inst, "minsum").value


def test_exact_maxcut_examples():
    tri = to_maxcut3(Instance((1, 1, 1), ((1, 2, 3),)))
    assert exact_maxcut(tri).weight == 1
    assert exact_maxcut(_graph(2, [(1, 2, Fraction(5, 3))])).weight == Fraction(5, 3)
    assert exact_maxcut(_graph(3, [])).weight == 0
    assert exact_maxcut(_graph(0, [])).weight == 0
    with pytest.raises(CapExceeded):
        exact_maxcut(_graph(23, []))


def test_exact_maxcut_tie_break():
    cut = exact_maxcut(_graph(3, [(1, 2, 1)]))
    assert cut.side == ("L", "R", "L")


def test_local_search_examples():
    k3 = _graph(3, [(1, 2, 1), (2, 3, 1), (1, 3, 1)])
    for seed in range(10):
        assert local_search_cut(k3, seed).weight == 2
    assert local_search_cut(_graph(4, []), 1).weight == 0


@pytest.mark.parametrize("seed", range(30))
def test_local_search_half_bound(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 15)
    edges = [(u, v, Fraction(rng.randint(0, 12), rng.randint(1, 4)))
             for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5]
    g = _graph(n, edges)
    cut = local_search_cut(g, seed)
    assert cut.weight >= g.total_weight / 2
    assert g.cut_weight(cut.left) == cut.weight
    assert cut.weight <= exact_maxcut(g).weight


def test_solve_via_cut_examples():
    pairs_only = Instance((2, 1, 1), ((2, 3), (2, 3)))
    assert eval_minsum(solve_sm2_via_cut(pairs_only), pairs_only) == 2
    tri = Instance((1, 1, 1), ((1, 2, 3),))
    assert eval_minsum(solve_sm2_via_cut(tri), tri) == 2
    with pytest.raises(PreconditionError):
        solve_sm2_via_cut(Instance((1,) * 4, ((1, 2, 3, 4),)))


@pytest.mark.parametrize("seed", range(30))
def test_solve_via_cut_exact_matches_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng.randint(1, 10), rng.randint(1, 8), 3, 9, seed)
    opt = brute_force(inst, "minsum").value
    assert eval_minsum(solve_sm2_via_cut(inst), inst) == opt
    ls = eval_minsum(solve_sm2_via_cut(inst, "local_search", seed), inst)
    assert opt <= ls <= 2 * opt


def test_solve_via_nae_examples(example):
    assert eval_minsum(solve_sm2_via_nae(example), example) == 5
    single = Instance((4,), ((1,),))
    assert eval_minsum(solve_sm2_via_nae(single), single) == 4


@pytest.mark.parametrize("seed", range(20))
def test_nae_and_cut_agree_on_pairs(seed):
    rng = random.Random(seed)
    inst = pairs_instance(rng.randint(2, 9), rng.randint(1, 10), 9, seed)
    via_nae = eval_minsum(solve_sm2_via_nae(inst), inst)
    assert via_nae == eval_minsum(solve_sm2_via_cut(inst), inst) == brute_force(inst, "minsum").value


@pytest.mark.parametrize("seed", range(20))
def test_solve_via_nae_exact_matches_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng.randint(1, 9), rng.randint(1, 5), rng.randint(1, 4), 9, seed)
    assert eval_minsum(solve_sm2_via_nae(inst), inst) == brute_force(inst, "minsum").value


@pytest.mark.parametrize("seed", range(15))
def test_nae_local_search_is_locally_optimal(seed):
    inst = triples_instance(8, 6, 9, seed)
    cs = to_nae_sat(inst)
    truth = local_search_nae(cs, seed)
    base = cs.satisfied_weight(truth)
    for v in range(cs.n_vars):
        flipped = list(truth)
        flipped[v] = not flipped[v]
        assert cs.satisfied_weight(flipped) <= base
    assert base <= cs.satisfied_weight(exact_max_nae(cs))


def test_vector_list_examples(example):
    vs = to_vector_scheduling(example)
    a = vector_assignment(example, vs)
    assert eval_minmax(a, example) == 2
    twins = to_vector_scheduling(Instance((1, 1), ((1, 2),)))
    assert sorted(vector_list_schedule(twins)) == [1, 2]
    scalars = to_vector_scheduling(Instance((5, 4, 3, 3, 3), ((1, 2, 3, 4, 5),)))
    assert vector_list_schedule(scalars) == (1, 2, 2, 1, 2)
    assert scalars.makespan(vector_list_schedule(scalars)) == 10


def test_vector_list_many_machines():
    inst = Instance((3, 3, 3, 1), ((1, 2, 3, 4),))
    vs = to_vector_scheduling(inst, m=3)
    assert sorted(vector_list_schedule(vs)[:3]) == [1, 2, 3]
    with pytest.raises(PreconditionError):
        vector_assignment(inst, vs)


def test_random_assign_empirical_mean():
    # 200 instances, 1000 independent trials each; 3 standard errors of slack
    for i in range(200):
        rng = random.Random(80_000 + i)
        inst = random_instance(rng.randint(1, 14), rng.randint(1, 5), rng.randint(1, 4), 9, seed=80_000 + i)
        opt = brute_force(inst, "minsum").value
        values = [eval_minsum(Assignment.from_bits(trial_bits(inst.n, i, t)), inst) for t in range(1000)]
        slack = 3 * statistics.pstdev(values) / 1000**0.5
        assert statistics.fmean(values) <= 1.5 * opt + slack
