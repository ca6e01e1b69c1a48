import pytest

from conftest import c4, k2m, wagner
from tropgenus.graph import enumerate_circuits
from tropgenus.seed import Exhausted, SeedConfig, find_start, random_weights
from tropgenus.tropical import DegenerateWeights, face_dimension, on_curve, transversal_at


def test_random_weights_contract():
    w = random_weights(SeedConfig(rng_seed=1, weight_bits=24), 3)
    assert len(w) == 3 and len(set(w)) == 3
    assert all(1 <= x <= 2**24 for x in w)
    assert random_weights(SeedConfig(rng_seed=1), 3) == w
    assert random_weights(SeedConfig(rng_seed=2), 3) != w
    assert random_weights(SeedConfig(rng_seed=1), 3, attempt=1) != w
    assert random_weights(SeedConfig(), 0) == ()


def test_config_validation():
    with pytest.raises(ValueError):
        SeedConfig(weight_bits=4)
    with pytest.raises(ValueError):
        SeedConfig(max_restarts=0)
    with pytest.raises(ValueError):
        SeedConfig(circuit_order="random")


def test_degenerate_weights_rejected():
    g = c4()
    with pytest.raises(DegenerateWeights):
        find_start(g, enumerate_circuits(g), (1, 1, 1), SeedConfig())


@pytest.mark.parametrize("order", ["basis-first", "shortest-first", "mrv"])
@pytest.mark.parametrize("make", [c4, lambda: k2m(3), lambda: k2m(4), wagner])
def test_find_start_contract(make, order):
    g = make()
    circuits = enumerate_circuits(g)
    cfg = SeedConfig(rng_seed=5, circuit_order=order)
    w = random_weights(cfg, g.n)
    s = find_start(g, circuits, w, cfg)
    assert on_curve(s.point, circuits, w)
    assert transversal_at(s.point, circuits, w)
    assert s.face_dimension <= 1
    assert face_dimension(s.point, circuits, w) == s.face_dimension
    # deterministic
    assert find_start(g, circuits, w, cfg) == s


def test_c4_start_has_frozen_first_coordinate():
    g = c4()
    s = find_start(g, enumerate_circuits(g), (1, 2, 3), SeedConfig())
    assert s.point[0] == 0


def test_node_budget():
    g = k2m(4)
    circuits = enumerate_circuits(g)
    cfg = SeedConfig(node_budget=1)
    with pytest.raises(Exhausted):
        find_start(g, circuits, random_weights(cfg, g.n), cfg)
