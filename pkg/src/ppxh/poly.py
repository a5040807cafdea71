"""Polynomial solvers for restricted instances and the greedy approximation."""

from __future__ import annotations

from dataclasses import dataclass

from .bitlin import independent_columns, iter_bits
from .errors import InvariantError, NotInClassError
from .model import NULL, Instance, Solution, verify

__all__ = ["CycleClass", "cycle_classes", "solve_inf2", "solve_2inf", "solve_approx"]


@dataclass(frozen=True)
class CycleClass:
    genotypes: tuple[int, ...]  # row indices, in input order
    support: int


def cycle_classes(instance: Instance) -> list[CycleClass]:
    """Partition genotypes by the transitive closure of sharing a character."""
    parent = list(range(instance.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, g in enumerate(instance.genotypes):
        for j in iter_bits(g):
            if j in owner:
                a, b = find(owner[j]), find(i)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[j] = i
    groups: dict[int, list[int]] = {}
    for i in range(instance.n):
        groups.setdefault(find(i), []).append(i)
    classes = []
    for members in groups.values():
        support = 0
        for i in members:
            support |= instance.genotypes[i]
        classes.append(CycleClass(tuple(members), support))
    return classes


def solve_inf2(instance: Instance) -> Solution:
    """Optimal solution when every character occurs in at most two genotypes.

    Each class of character-sharing genotypes becomes a cycle through the null
    haplotype, so the size is ``n + 1 - #classes``.
    """
    if instance.max_occurrence() > 2:
        raise NotInClassError("a character occurs in three or more genotypes")
    haps = [NULL]
    for cls in cycle_classes(instance):
        rows = cls.genotypes
        acc = 0
        for i in rows[:-1]:
            acc ^= instance.genotypes[i]
            haps.append(acc)
        if len(rows) == 1:
            haps.append(instance.genotypes[rows[0]])
        elif acc ^ instance.genotypes[rows[-1]] != 0:
            raise NotInClassError("a character class does not xor to the empty set; reduce the instance first")
    solution = verify(instance, haps)
    if solution is None or solution.size != len(haps):
        raise InvariantError("cycle construction produced repeated or non-resolving haplotypes")
    return solution


def solve_2inf(instance: Instance) -> Solution:
    """Optimal solution when every genotype has at most two characters.

    On a maximal independent column set the null haplotype plus one unit
    haplotype per column resolve everything; dependent columns are filled in
    as xors of their certificate columns.
    """
    if any(bin(g).count("1") > 2 for g in instance.genotypes):
        raise NotInClassError("a genotype has three or more characters")
    basis = independent_columns(instance.matrix())
    units = [NULL] + [1 << p for p in basis.pivot_indices]
    haps = []
    for h in units:
        full = h
        for alpha, sigma in basis.certificates.items():
            if sum((h >> s) & 1 for s in sigma) & 1:
                full |= 1 << alpha
        haps.append(full)
    solution = verify(instance, haps)
    if solution is None:
        raise InvariantError("unit-vector construction failed to resolve the instance")
    return solution


def solve_approx(instance: Instance) -> Solution:
    """Greedy approximation with at most ``l * m + 1`` haplotypes.

    Characters are taken in alphabet order; every genotype containing the
    current character joins the solution as a haplotype (paired with the null
    haplotype), then all genotypes already resolved by the current set leave.
    """
    haps: dict[int, None] = {NULL: None}
    remaining = list(instance.genotypes)
    while remaining:
        present = 0
        for g in remaining:
            present |= g
        alpha = (present & -present).bit_length() - 1
        for g in remaining:
            if (g >> alpha) & 1:
                haps.setdefault(g, None)
        remaining = [g for g in remaining if not any((g ^ h) in haps for h in haps)]
    solution = verify(instance, haps)
    if solution is None:
        raise InvariantError("approximation left a genotype unresolved")
    return solution
