import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from scensched import (
    BruteForceScheduler,
    DerandomizedScheduler,
    MaxCutReduction,
    MaxCutScheduler,
    NaeSatReduction,
    NaeSatScheduler,
    PairsScheduler,
    RandomScheduler,
    UnitDPScheduler,
    VectorEmbedding,
    VectorListScheduler,
    check_instance,
    serialize_instance,
)
from scensched.core import Instance
from scensched.estimators import ALGORITHMS, make_scheduler
from scensched.reductions import ClauseSet, CutGraph, VectorSet

from conftest import EXAMPLE_TEXT


def test_check_instance_inputs(example, tmp_path):
    assert check_instance(example) is example
    assert check_instance(EXAMPLE_TEXT) == example
    assert check_instance(EXAMPLE_TEXT.encode()) == example
    path = tmp_path / "inst.txt"
    path.write_text(EXAMPLE_TEXT)
    assert check_instance(path) == example
    assert check_instance(str(path)) == example
    assert check_instance(((2, 1, 1), [[1, 2, 3], [2, 3], [2, 3]])) == example
    with pytest.raises(TypeError):
        check_instance(42)


@pytest.mark.parametrize(
    "est, value",
    [
        (BruteForceScheduler(objective="minmax"), 2),
        (BruteForceScheduler(objective="minsum"), 5),
        (RandomScheduler(trials=64, random_state=1), 5),
        (DerandomizedScheduler(), 5),
        (NaeSatScheduler(), 5),
        (VectorListScheduler(), 2),
    ],
)
def test_fit_example(example, est, value):
    est.fit(example)
    assert est.value_ == value
    labels = est.predict()
    assert labels.shape == (3,) and set(labels) <= {1, 2}
    assert est.score(example) == -value


def test_pairs_and_cut_estimators():
    pairs = Instance((1, 1, 1), ((1, 2), (2, 3), (1, 3)))
    assert PairsScheduler().fit(pairs).value_ == 2
    assert UnitDPScheduler(objective="minsum").fit(pairs).value_ == 4
    assert MaxCutScheduler().fit(pairs).value_ == 4
    assert MaxCutScheduler(backend="local_search", random_state=3).fit(pairs).value_ == 4


def test_params_and_clone():
    est = MaxCutScheduler(backend="local_search", random_state=9)
    params = est.get_params()
    assert params["backend"] == "local_search" and params["random_state"] == 9
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(backend="exact")
    assert est.backend == "exact"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        BruteForceScheduler().predict()


def test_wrong_objective(example):
    with pytest.raises(ValueError):
        PairsScheduler(objective="minsum").fit(example)
    with pytest.raises(ValueError):
        BruteForceScheduler(objective="median").fit(example)


def test_predict_checks_size(example):
    est = BruteForceScheduler().fit(example)
    np.testing.assert_array_equal(est.predict(example), [1, 2, 2])
    with pytest.raises(ValueError):
        est.predict(Instance((1,), ((1,),)))


def test_random_state_must_be_int(example):
    with pytest.raises(TypeError):
        RandomScheduler(random_state=np.random.default_rng(0)).fit(example)


def test_transformers(example):
    assert isinstance(NaeSatReduction().fit_transform(example), ClauseSet)
    assert isinstance(VectorEmbedding(m=3).fit_transform(serialize_instance(example)), VectorSet)
    assert isinstance(MaxCutReduction().fit_transform(example), CutGraph)


def test_make_scheduler_registry():
    for name in ALGORITHMS:
        cls = ALGORITHMS[name][0]
        obj = cls.supported_objectives[0]
        est = make_scheduler(name, obj, seed=4, trials=3, caps={"brute": 10, "cut_n": 9, "nae_r": 5})
        assert isinstance(est, cls)
    assert make_scheduler("brute", "minsum", caps={"brute": 10}).cap == 10
    assert make_scheduler("nae_exact", "minsum", caps={"nae_r": 5}).r_cap == 5
    with pytest.raises(ValueError):
        make_scheduler("pairs", "minsum")
    with pytest.raises(ValueError):
        make_scheduler("nope", "minsum")
