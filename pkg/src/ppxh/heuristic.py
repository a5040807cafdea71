"""Realization-based heuristic.

Independent genotypes become the spanning tree of a candidate xor-graph and
every dependent genotype a chord whose fundamental cycle is its certificate.
A maximal realizable subfamily is kept, the realization is labelled, and the
genotypes it could not place are reduced and solved recursively.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .bitlin import independent_rows
from .errors import InvariantError, UsageError
from .graphreal import RealizationSession
from .model import NULL, Instance, Solution, label_vertices, translate, verify
from .reduce import lift, reduce

__all__ = ["HeuristicConfig", "heu", "heu_best_of_permutations", "ratio_r"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeuristicConfig:
    permutations: int = 10
    seed: int = 0
    max_recursion: int = 200

    def __post_init__(self):
        if self.permutations < 1:
            raise UsageError("permutations must be at least 1")
        if self.max_recursion < 1:
            raise UsageError("max_recursion must be at least 1")


def heu(instance: Instance, cfg: HeuristicConfig = HeuristicConfig(), rng: random.Random | None = None,
        _depth: int = 0) -> Solution:
    """Heuristic solution for a reduced instance."""
    if _depth > cfg.max_recursion:
        raise InvariantError("heuristic recursion limit exceeded")
    if rng is None:
        rng = random.Random(cfg.seed)
    X = instance.genotypes
    if not X:
        return Solution((NULL,), ())
    if instance.n == instance.m:
        # independent rows: the star around h0 meets the m + 1 lower bound
        return verify(instance, (NULL,) + X)

    basis = independent_rows(instance.matrix())
    session = RealizationSession(basis.pivot_indices)
    for i in sorted(basis.certificates):
        cert = basis.certificates[i]
        acc = X[i]
        for j in cert:
            acc ^= X[j]
        if acc:
            raise InvariantError("certificate does not xor to the genotype")
        session.add_set(i, cert)
    real = session.realize()
    edges = [(u, v) for u, v, _ in real.edges]
    haps = label_vertices(real.n_vertices, edges, [X[lab] for _, _, lab in real.edges])
    haps = translate(haps, haps[rng.randrange(len(haps))])

    placed = {lab for _, _, lab in real.edges}
    leftover = [g for i, g in enumerate(X) if i not in placed]
    log.debug("heu depth %d: %d tree, %d placed chords, %d leftover",
              _depth, len(basis.pivot_indices), len(placed) - len(basis.pivot_indices), len(leftover))
    union = dict.fromkeys(haps)
    if leftover:
        reduced = reduce(Instance(instance.alphabet, leftover))
        sub = heu(reduced.instance, cfg, rng, _depth + 1)
        union.update(dict.fromkeys(lift(sub, reduced).haplotypes))
    solution = verify(instance, union)
    if solution is None:
        raise InvariantError("heuristic output does not resolve its input")
    return solution


def heu_best_of_permutations(instance: Instance, cfg: HeuristicConfig = HeuristicConfig()) -> Solution:
    """Smallest heuristic solution over ``cfg.permutations`` row orders.

    The first order is the input order; the others are seeded shuffles.
    """
    rng = random.Random(cfg.seed)
    best = None
    for p in range(cfg.permutations):
        order = list(range(instance.n))
        if p:
            rng.shuffle(order)
        reduced = reduce(instance.permuted(order))
        sub = heu(reduced.instance, cfg, random.Random(rng.getrandbits(64)))
        found = verify(instance, lift(sub, reduced).haplotypes)
        if found is None:
            raise InvariantError("lifted heuristic solution does not resolve the input")
        log.debug("permutation %d: %d haplotypes", p, found.size)
        if best is None or found.size < best.size:
            best = found
    return best


def ratio_r(result_size: float, initial_distinct_used: float) -> float:
    """Solution size over the number of generating haplotypes, to two decimals."""
    if initial_distinct_used <= 0:
        raise UsageError("the number of generating haplotypes must be positive")
    return round(result_size / initial_distinct_used, 2)
