"""Exhaustive minimum-size solver for tiny instances, used as a test oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BudgetError
from .model import NULL, Instance, Solution, verify
from .reduce import lift, lower_bound, reduce

__all__ = ["OracleBudget", "brute_min"]


@dataclass(frozen=True)
class OracleBudget:
    max_characters: int = 4
    max_solution_size: int = 6


def _search(instance: Instance, start: int, budget: OracleBudget) -> Solution:
    if instance.n == 0:
        return Solution((NULL,), ())
    if instance.m > budget.max_characters:
        raise BudgetError(f"{instance.m} characters exceed the oracle budget of {budget.max_characters}")
    targets = set(instance.genotypes)
    candidates = range(1, 1 << instance.m)
    size = start
    while True:
        if size > budget.max_solution_size:
            raise BudgetError(f"no solution with at most {budget.max_solution_size} haplotypes")
        # h0 can always be assumed present: translating a solution by one of
        # its members keeps every pairwise xor.
        for rest in combinations(candidates, size - 1):
            haps = (NULL,) + rest
            xors = {a ^ b for a, b in combinations(haps, 2)}
            if targets <= xors:
                found = verify(instance, haps)
                assert found is not None
                return found
        size += 1


def brute_min(instance: Instance, budget: OracleBudget = OracleBudget(), reduce_first: bool = True) -> Solution:
    """Lexicographically first minimum solution, by exhaustion.

    With ``reduce_first`` the search runs on the kernel and the result is
    lifted; otherwise it enumerates haplotypes over the full alphabet.
    """
    if not reduce_first:
        return _search(instance, 2 if instance.n else 1, budget)
    reduced = reduce(instance)
    best = _search(reduced.instance, lower_bound(reduced), budget)
    return lift(best, reduced)
