import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ppxh.bitlin import rank
from ppxh.errors import NotInClassError
from ppxh.model import NULL, Instance, build_xor_graph, fundamental_cycle_check, verify
from ppxh.oracle import brute_min
from ppxh.poly import cycle_classes, solve_2inf, solve_approx, solve_inf2
from ppxh.reduce import lower_bound, reduce

from conftest import inf2_instance, instances, random_instance, two_inf_instance


def test_cycle_classes_partition():
    x = Instance.from_sets([["a", "b"], ["b"], ["a"], ["c", "d"], ["d"], ["c"]])
    classes = cycle_classes(x)
    assert sorted(c.genotypes for c in classes) == [(0, 1, 2), (3, 4, 5)]
    assert classes[0].support & classes[1].support == 0


def test_inf2_examples():
    sol = solve_inf2(Instance.from_sets([["a", "b"], ["b"], ["a"]]))
    assert sol.size == 3 and NULL in sol.haplotypes
    two = Instance.from_sets([["a", "b"], ["b"], ["a"], ["c", "d"], ["d"], ["c"]])
    assert solve_inf2(two).size == 5 == brute_min(two).size
    assert set(solve_inf2(Instance.from_sets([["a"]])).haplotypes) == {NULL, 1}


def test_inf2_rejects_heavy_character():
    with pytest.raises(NotInClassError):
        solve_inf2(Instance.from_sets([["a"], ["a", "b"], ["a", "c"]]))


def test_2inf_examples():
    sol = solve_2inf(Instance.from_sets([["a"], ["b"], ["a", "b"]]))
    assert set(sol.haplotypes) == {NULL, 1, 2}
    assert set(solve_2inf(Instance.from_sets([["a"]])).haplotypes) == {NULL, 1}
    tri = Instance.from_sets([["a", "b"], ["b", "c"], ["a", "c"]])
    sol = solve_2inf(tri)
    assert sol.size == 3 == rank(tri.matrix()) + 1
    for h in sol.haplotypes:
        assert ((h >> 2) & 1) == ((h & 1) ^ ((h >> 1) & 1))


def test_2inf_rejects_wide_genotype():
    with pytest.raises(NotInClassError):
        solve_2inf(Instance.from_sets([["a", "b", "c"]]))


def test_approx_example():
    sol = solve_approx(Instance.from_sets([["a", "b"], ["b"], ["a"]]))
    assert set(sol.haplotypes) == {NULL, 0b11, 0b01}
    assert set(solve_approx(Instance.from_sets([["a"]])).haplotypes) == {NULL, 1}


def test_inf2_matches_oracle():
    rng = random.Random(5)
    for _ in range(60):
        x = inf2_instance(rng)
        sol = solve_inf2(x)
        # a lone genotype is a pendant edge, not a cycle
        cycles = sum(len(c.genotypes) > 1 for c in cycle_classes(x))
        assert sol.size == x.n + 1 - cycles == brute_min(x).size
        assert len(set(sol.haplotypes)) == sol.size
        assert fundamental_cycle_check(build_xor_graph(x, sol))


def test_2inf_matches_oracle():
    rng = random.Random(6)
    for _ in range(60):
        x = two_inf_instance(rng)
        sol = solve_2inf(x)
        assert sol.size == rank(x.matrix()) + 1 == lower_bound(x) == brute_min(x).size


@given(instances(max_m=5, max_n=8))
def test_approx_bound(x):
    red = reduce(x).instance
    if not red.n:
        return
    sol = solve_approx(red)
    l = red.max_occurrence()
    assert lower_bound(red) <= sol.size <= l * red.m + 1
    if red.n > 1:
        assert sol.size >= red.m + 1


@given(st.integers(0, 2**32 - 1))
def test_approx_resolves_unreduced(seed):
    x = random_instance(random.Random(seed), max_m=6, max_n=10)
    assert verify(x, solve_approx(x).haplotypes) is not None
    assert max(Counter(h for h in solve_approx(x).haplotypes).values()) == 1
