import random

import pytest
from hypothesis import given, strategies as st

from ppxh.errors import UsageError
from ppxh.heuristic import HeuristicConfig, heu, heu_best_of_permutations, ratio_r
from ppxh.io import generate
from ppxh.model import NULL, Instance, build_xor_graph, fundamental_cycle_check, verify
from ppxh.oracle import brute_min
from ppxh.reduce import lift, lower_bound, reduce

from conftest import independent_instance, random_instance

PAIRS = Instance.from_sets([["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["b", "c"]])


def test_config_validation():
    with pytest.raises(UsageError):
        HeuristicConfig(permutations=0)


def test_star_when_rows_independent():
    x = independent_instance(random.Random(1), 6)
    sol = heu(x)
    assert set(sol.haplotypes) == {NULL, *x.genotypes}
    assert sol.size == x.m + 1


def test_triangle():
    x = Instance.from_sets([["a"], ["b"], ["a", "b"]])
    assert heu(x).size == 3 == brute_min(x).size


def test_pairs_instance():
    sol = heu(PAIRS)
    assert sol.size >= brute_min(PAIRS).size == 4
    # the three unit genotypes form the tree, each pair closes a triangle
    assert sol.size == 4


def test_worked(worked):
    sol = heu_best_of_permutations(worked)
    assert verify(worked, sol.haplotypes) is not None
    assert sol.size == 6


def test_single_permutation_is_one_run(worked):
    cfg = HeuristicConfig(permutations=1, seed=4)
    red = reduce(worked)
    # the wrapper derives the run's generator from its own seeded one
    run_rng = random.Random(random.Random(4).getrandbits(64))
    single = lift(heu(red.instance, cfg, run_rng), red)
    best = heu_best_of_permutations(worked, cfg)
    assert set(best.haplotypes) == set(single.haplotypes)


def test_best_is_minimum_over_more_permutations():
    g = generate(40, 12, 10, seed=3).instance
    sizes = [heu_best_of_permutations(g, HeuristicConfig(permutations=p, seed=9)).size for p in (1, 3, 6)]
    assert sizes == sorted(sizes, reverse=True)


def test_deterministic_under_seed():
    g = generate(60, 20, 15, seed=7).instance
    cfg = HeuristicConfig(permutations=4, seed=2)
    assert heu_best_of_permutations(g, cfg) == heu_best_of_permutations(g, cfg)


def test_ratio_r():
    assert ratio_r(25, 25) == 1.0
    assert ratio_r(51.6, 32.9) == 1.57
    assert ratio_r(7, 7) == 1.0
    with pytest.raises(UsageError):
        ratio_r(3, 0)


@given(st.integers(0, 2**32 - 1))
def test_output_verifies_and_respects_bound(seed):
    rng = random.Random(seed)
    x = random_instance(rng, max_m=6, max_n=14)
    red = reduce(x)
    if red.instance.n:
        sol = heu(red.instance, HeuristicConfig(seed=seed))
        assert verify(red.instance, sol.haplotypes) is not None
        assert sol.size >= lower_bound(red)
        assert fundamental_cycle_check(build_xor_graph(red.instance, sol))
    full = heu_best_of_permutations(x, HeuristicConfig(permutations=2, seed=seed))
    assert verify(x, full.haplotypes) is not None


@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_optimal_when_square(seed, m):
    x = independent_instance(random.Random(seed), m)
    assert heu(x).size == m + 1
