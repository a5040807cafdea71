"""Kernelization of instances and lifting of solutions back to the original.

Two rules are applied until neither fires:

* characters whose column is a xor of other columns are dropped (the
  leftmost-pivot Gauss elimination picks which ones survive);
* a character present in exactly one genotype is dropped together with that
  genotype, which is later re-attached as a pendant edge at the null
  haplotype.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .bitlin import BitMatrix, array_to_ints, independent_columns, ints_to_array
from .errors import UsageError
from .model import NULL, Instance, Solution, translate, verify

__all__ = [
    "DropDependentColumn",
    "DropUniqueCharacter",
    "ReducedInstance",
    "reduce",
    "lift",
    "lower_bound",
    "is_reduced",
]


@dataclass(frozen=True)
class DropDependentColumn:
    """Column ``char`` equalled the xor of columns ``sigma`` when it was removed.

    Character indices refer to the original alphabet.
    """

    char: int
    sigma: tuple[int, ...]
    order: int
    sweep: int


@dataclass(frozen=True)
class DropUniqueCharacter:
    """``char`` occurred only in original row ``row``, whose bits (over the
    characters still present at the time) were ``genotype``."""

    char: int
    genotype: int
    row: int
    order: int
    sweep: int


ReductionStep = Union[DropDependentColumn, DropUniqueCharacter]


@dataclass(frozen=True)
class ReducedInstance:
    instance: Instance
    trace: tuple[ReductionStep, ...]
    original: Instance
    kept_columns: tuple[int, ...]
    kept_rows: tuple[int, ...]

    @property
    def n_unique_drops(self) -> int:
        return sum(isinstance(s, DropUniqueCharacter) for s in self.trace)

    @property
    def empty(self) -> bool:
        return self.instance.n == 0


def is_reduced(instance: Instance) -> bool:
    """Single genotype, or independent columns each used by at least two genotypes."""
    if instance.n <= 1:
        return True
    basis = independent_columns(instance.matrix())
    if basis.rank != instance.m:
        return False
    return min(instance.occurrences(), default=2) >= 2


def reduce(instance: Instance) -> ReducedInstance:
    """Apply both reduction rules to a fixpoint, recording a replayable trace."""
    work = ints_to_array(instance.genotypes, instance.m) if instance.n else np.zeros((0, instance.m), np.uint8)
    col_ids = np.arange(instance.m)
    row_ids = np.arange(instance.n)
    trace: list[ReductionStep] = []
    sweep = 0
    while True:
        changed = False
        if work.shape[1]:
            rows = array_to_ints(work) if work.shape[0] else []
            basis = independent_columns(BitMatrix(tuple(rows), work.shape[1]))
            dependent = basis.dependent_indices()
            if dependent:
                for j in dependent:
                    trace.append(DropDependentColumn(
                        int(col_ids[j]),
                        tuple(int(col_ids[p]) for p in basis.certificates[j]),
                        len(trace),
                        sweep,
                    ))
                keep = np.ones(work.shape[1], dtype=bool)
                keep[dependent] = False
                work = work[:, keep]
                col_ids = col_ids[keep]
                changed = True
        if work.shape[0] > 1:
            counts = work.sum(axis=0)
            j = 0
            while j < work.shape[1] and work.shape[0] > 1:
                if counts[j] == 1:
                    r = int(np.flatnonzero(work[:, j])[0])
                    bits = np.zeros(instance.m, dtype=np.uint8)
                    bits[col_ids] = work[r]
                    trace.append(DropUniqueCharacter(
                        int(col_ids[j]), array_to_ints(bits[None, :])[0], int(row_ids[r]), len(trace), sweep,
                    ))
                    counts = counts - work[r]
                    work = np.delete(np.delete(work, r, axis=0), j, axis=1)
                    counts = np.delete(counts, j)
                    col_ids = np.delete(col_ids, j)
                    row_ids = np.delete(row_ids, r)
                    changed = True
                    continue
                j += 1
        sweep += 1
        if not changed:
            break
    genotypes = tuple(array_to_ints(work)) if work.shape[0] and work.shape[1] else ()
    reduced = Instance(tuple(instance.alphabet[c] for c in col_ids), genotypes)
    return ReducedInstance(reduced, tuple(trace), instance, tuple(int(c) for c in col_ids), tuple(int(r) for r in row_ids))


def lower_bound(reduced: ReducedInstance | Instance) -> int:
    """Minimum solution size of a reduced instance: ``m + 1`` (2 for a single genotype)."""
    inst = reduced.instance if isinstance(reduced, ReducedInstance) else reduced
    if inst.n == 0:
        return 1
    if inst.n == 1:
        return 2
    return inst.m + 1


def lift(solution: Solution, reduced: ReducedInstance) -> Solution:
    """Replay the reduction trace backwards, producing a solution of the original instance."""
    inst = reduced.instance
    if inst.n == 0:
        solution = Solution((NULL,), ())
    elif len(solution.resolution) == inst.n:
        try:
            solution.check(inst)
        except Exception as exc:
            raise UsageError(f"solution does not resolve the reduced instance: {exc}") from None
    else:
        checked = verify(inst, solution.haplotypes)
        if checked is None:
            raise UsageError("solution does not resolve the reduced instance")
        solution = checked
    haps = list(solution.haplotypes)
    if reduced.n_unique_drops and NULL not in haps:
        haps = translate(haps, haps[0])
    null_index = haps.index(NULL) if NULL in haps else None

    original = reduced.original
    m = original.m
    mat = np.zeros((len(haps), m), dtype=np.uint8)
    if inst.m and haps:
        mat[:, list(reduced.kept_columns)] = ints_to_array(haps, inst.m)
    pairs: dict[int, tuple[int, int]] = {
        row: pair for row, pair in zip(reduced.kept_rows, solution.resolution)
    }

    steps = list(reduced.trace)
    k = len(steps) - 1
    while k >= 0:
        step = steps[k]
        if isinstance(step, DropUniqueCharacter):
            new = ints_to_array([step.genotype], m)
            mat = np.vstack([mat, new])
            pairs[step.row] = (null_index, mat.shape[0] - 1)
            k -= 1
            continue
        start = k
        while start - 1 >= 0 and isinstance(steps[start - 1], DropDependentColumn) and steps[start - 1].sweep == step.sweep:
            start -= 1
        batch = steps[start:k + 1]
        pivots = sorted({p for s in batch for p in s.sigma})
        if pivots:
            where = {p: i for i, p in enumerate(pivots)}
            cert = np.zeros((len(pivots), len(batch)), dtype=np.int64)
            for col, s in enumerate(batch):
                for p in s.sigma:
                    cert[where[p], col] = 1
            values = (mat[:, pivots].astype(np.int64) @ cert) & 1
            mat[:, [s.char for s in batch]] = values.astype(np.uint8)
        else:
            mat[:, [s.char for s in batch]] = 0
        k = start - 1

    lifted = Solution(tuple(array_to_ints(mat)) if mat.shape[0] else (), tuple(pairs[i] for i in range(original.n)))
    lifted.check(original)
    return lifted
