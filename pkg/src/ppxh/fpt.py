"""Exact solver parameterized by the solution size.

All ``k x m`` haplotype matrices are visited in reflected Gray-code order, so
consecutive matrices differ in one bit and therefore in one haplotype.  Only
the ``k - 1`` pairs involving the changed row are re-probed against a binary
trie of the genotypes; per-genotype counters track how many row pairs
currently resolve each genotype.
"""

from __future__ import annotations

import logging
from math import comb

import numpy as np
from numba import njit

from .errors import BudgetError, UsageError
from .model import NULL, Instance, Solution, verify
from .reduce import lift, lower_bound, reduce

__all__ = [
    "DEFAULT_BUDGET",
    "GrayEnumerator",
    "GenotypeTrie",
    "ResolutionState",
    "gray_advance",
    "decide_k",
    "solve_exact",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 26


class GrayEnumerator:
    """Reflected binary Gray code over ``bit_count`` bits, starting at all zeros."""

    def __init__(self, bit_count: int):
        if bit_count < 0:
            raise UsageError("bit_count must be non-negative")
        self.bit_count = bit_count
        self.state = 0
        self.step = None
        self._counter = 0

    @property
    def exhausted(self) -> bool:
        return self._counter >= (1 << self.bit_count) - 1

    def advance(self) -> int:
        """Flip one bit and return its index."""
        if self.exhausted:
            raise StopIteration
        self._counter += 1
        c = self._counter
        bit = (c & -c).bit_length() - 1
        self.state ^= 1 << bit
        self.step = bit
        return bit

    def __iter__(self):
        return self

    def __next__(self) -> int:
        return self.advance()


def gray_advance(enumerator: GrayEnumerator) -> int:
    return enumerator.advance()


class GenotypeTrie:
    """Binary trie over fixed-width keys; leaves hold genotype indices."""

    def __init__(self, width: int, keys=()):
        self.width = width
        self.children: list[list[int]] = [[-1, -1]]
        self.leaf: list[int] = [-1]
        for i, key in enumerate(keys):
            self.insert(key, i)

    def insert(self, key: int, value: int) -> None:
        node = 0
        for b in range(self.width):
            bit = (key >> b) & 1
            nxt = self.children[node][bit]
            if nxt < 0:
                nxt = len(self.children)
                self.children.append([-1, -1])
                self.leaf.append(-1)
                self.children[node][bit] = nxt
            node = nxt
        self.leaf[node] = value

    def lookup(self, key: int) -> int:
        """Index stored under ``key``, or -1.  Walks ``width`` nodes."""
        if key >> self.width:
            return -1
        node = 0
        for b in range(self.width):
            node = self.children[node][(key >> b) & 1]
            if node < 0:
                return -1
        return self.leaf[node]

    def arrays(self):
        kids = np.asarray(self.children, dtype=np.int64).reshape(-1, 2)
        return np.ascontiguousarray(kids[:, 0]), np.ascontiguousarray(kids[:, 1]), np.asarray(self.leaf, dtype=np.int64)


class ResolutionState:
    """Incremental bookkeeping of which genotypes the current rows resolve.

    ``lists[r]`` holds triples ``(r1, r2, x)`` for every pair involving row
    ``r`` that resolves genotype ``x``; ``counts[x]`` is the number of such
    pairs and ``total`` the number of genotypes with a positive count.
    """

    def __init__(self, k: int, n: int):
        self.rows = [0] * k
        self.counts = [0] * n
        self.lists: list[list[tuple[int, int, int]]] = [[] for _ in range(k)]
        self.total = 0

    def update_row(self, r: int, value: int, trie: GenotypeTrie) -> None:
        self.rows[r] = value
        for triple in list(self.lists[r]):
            r1, r2, x = triple
            self.lists[r1].remove(triple)
            self.lists[r2].remove(triple)
            self.counts[x] -= 1
            if self.counts[x] == 0:
                self.total -= 1
        for other in range(len(self.rows)):
            if other == r:
                continue
            x = trie.lookup(self.rows[other] ^ value)
            if x >= 0:
                if self.counts[x] == 0:
                    self.total += 1
                self.counts[x] += 1
                triple = (other, r, x)
                self.lists[other].append(triple)
                self.lists[r].append(triple)

    def recount(self, genotypes) -> list[int]:
        """Counts recomputed from scratch (for consistency checks)."""
        where = {g: i for i, g in enumerate(genotypes)}
        counts = [0] * len(genotypes)
        for a in range(len(self.rows)):
            for b in range(a + 1, len(self.rows)):
                x = where.get(self.rows[a] ^ self.rows[b])
                if x is not None:
                    counts[x] += 1
        return counts


@njit(cache=True)
def _lookup(child0, child1, leaf, key, width):
    node = 0
    for b in range(width):
        if (key >> b) & 1:
            node = child1[node]
        else:
            node = child0[node]
        if node < 0:
            return -1
    return leaf[node]


@njit(cache=True)
def _gray_search(k, m, n, child0, child1, leaf):
    rows = np.zeros(k, dtype=np.int64)
    pair = -np.ones((k, k), dtype=np.int64)  # genotype resolved by rows (a, b), or -1
    counts = np.zeros(n, dtype=np.int64)
    total = 0
    limit = np.int64(1) << (k * m)
    c = np.int64(1)
    while c < limit:
        bit = 0
        t = c
        while (t & 1) == 0:
            t >>= 1
            bit += 1
        r = bit // m
        rows[r] ^= np.int64(1) << (bit % m)
        for o in range(k):
            x = pair[r, o]
            if x >= 0:
                pair[r, o] = -1
                pair[o, r] = -1
                counts[x] -= 1
                if counts[x] == 0:
                    total -= 1
        for o in range(k):
            if o == r:
                continue
            x = _lookup(child0, child1, leaf, rows[r] ^ rows[o], m)
            if x >= 0:
                if counts[x] == 0:
                    total += 1
                counts[x] += 1
                pair[r, o] = x
                pair[o, r] = x
        if total == n:
            return True, rows
        c += 1
    return False, rows


def _python_search(instance: Instance, k: int, trie: GenotypeTrie):
    m, n = instance.m, instance.n
    state = ResolutionState(k, n)
    gray = GrayEnumerator(k * m)
    for bit in gray:
        r = bit // m
        state.update_row(r, state.rows[r] ^ (1 << (bit % m)), trie)
        if state.total == n:
            return state.rows
    return None


def decide_k(instance: Instance, k: int, budget: int = DEFAULT_BUDGET, engine: str = "numba") -> Solution | None:
    """A solution with at most ``k`` haplotypes for a reduced instance, or ``None``."""
    if k < 1:
        raise UsageError("k must be at least 1")
    n, m = instance.n, instance.m
    if n == 0:
        return Solution((NULL,), ())
    # A reduced instance needs at least m + 1 haplotypes, so k <= m is hopeless.
    if comb(k, 2) < n or (n > 1 and k <= m):
        return None
    if k > n:
        return verify(instance, (NULL,) + instance.genotypes)
    if k * m > budget:
        raise BudgetError(f"k*m = {k * m} exceeds the enumeration budget {budget}")
    log.debug("gray enumeration: k=%d m=%d km=%d", k, m, k * m)
    trie = GenotypeTrie(m, instance.genotypes)
    if engine == "python":
        rows = _python_search(instance, k, trie)
    elif engine == "numba":
        found, arr = _gray_search(k, m, n, *trie.arrays())
        rows = [int(v) for v in arr] if found else None
    else:
        raise UsageError(f"unknown engine {engine!r}")
    if rows is None:
        return None
    solution = verify(instance, rows)
    assert solution is not None and solution.size <= k
    return solution


def solve_exact(instance: Instance, budget: int = DEFAULT_BUDGET, engine: str = "numba") -> Solution:
    """A minimum solution: reduce, then try ``k`` upward from the lower bounds."""
    reduced = reduce(instance)
    inst = reduced.instance
    k = lower_bound(reduced)
    while comb(k, 2) < inst.n:
        k += 1
    while True:
        found = decide_k(inst, k, budget=budget, engine=engine)
        if found is not None:
            return lift(found, reduced)
        k += 1
