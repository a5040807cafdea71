"""Instances, solutions and xor-graphs.

Genotypes and haplotypes are integer bitsets over an ordered alphabet of
character names: bit ``j`` set means character ``alphabet[j]`` is present.
The empty haplotype ``0`` is the null haplotype.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence
import string

from .bitlin import BitMatrix, BitVector, iter_bits
from .errors import CycleSumError, InvariantError, UsageError

__all__ = [
    "NULL",
    "default_names",
    "Instance",
    "Solution",
    "XorGraph",
    "resolve_pair",
    "verify",
    "build_xor_graph",
    "label_vertices",
    "fundamental_cycle_check",
    "translate",
    "character_cut",
    "format_set",
]

NULL = 0


def default_names(m: int) -> tuple[str, ...]:
    if m <= 26:
        return tuple(string.ascii_lowercase[:m])
    return tuple(f"s{j}" for j in range(m))


def format_set(bits: int, alphabet: Sequence[str], empty: str = "{}") -> str:
    if not bits:
        return empty
    return "{" + ",".join(alphabet[j] for j in iter_bits(bits)) + "}"


@dataclass(frozen=True)
class Instance:
    """A set of distinct, non-empty xor-genotypes over an ordered alphabet."""

    alphabet: tuple[str, ...]
    genotypes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "genotypes", tuple(int(g) for g in self.genotypes))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise UsageError("duplicate character names")
        limit = 1 << len(self.alphabet)
        seen = set()
        for g in self.genotypes:
            if g <= 0:
                raise UsageError("genotypes must be non-empty")
            if g >= limit:
                raise UsageError("genotype uses characters outside the alphabet")
            if g in seen:
                raise UsageError(f"duplicate genotype {format_set(g, self.alphabet)}")
            seen.add(g)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[str]], alphabet: Sequence[str] | None = None) -> "Instance":
        sets = [list(s) for s in sets]
        if alphabet is None:
            names: list[str] = []
            for s in sets:
                for ch in s:
                    if ch not in names:
                        names.append(ch)
            alphabet = sorted(names)
        index = {ch: j for j, ch in enumerate(alphabet)}
        rows = []
        for s in sets:
            word = 0
            for ch in s:
                if ch not in index:
                    raise UsageError(f"unknown character {ch!r}")
                word |= 1 << index[ch]
            rows.append(word)
        return cls(tuple(alphabet), tuple(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], alphabet: Sequence[str] | None = None) -> "Instance":
        matrix = BitMatrix.from_lists(rows)
        if alphabet is None:
            alphabet = default_names(matrix.cols)
        return cls(tuple(alphabet), matrix.rows)

    @property
    def n(self) -> int:
        return len(self.genotypes)

    @property
    def m(self) -> int:
        return len(self.alphabet)

    @property
    def index(self) -> dict[str, int]:
        return {ch: j for j, ch in enumerate(self.alphabet)}

    def matrix(self) -> BitMatrix:
        return BitMatrix(self.genotypes, self.m)

    def genotype(self, i: int) -> BitVector:
        return BitVector(self.m, self.genotypes[i])

    def occurrences(self) -> list[int]:
        """Number of genotypes containing each character."""
        counts = [0] * self.m
        for g in self.genotypes:
            for j in iter_bits(g):
                counts[j] += 1
        return counts

    def max_occurrence(self) -> int:
        return max(self.occurrences(), default=0)

    def permuted(self, order: Sequence[int]) -> "Instance":
        return Instance(self.alphabet, tuple(self.genotypes[i] for i in order))

    def sets(self) -> list[set[str]]:
        return [{self.alphabet[j] for j in iter_bits(g)} for g in self.genotypes]


@dataclass(frozen=True)
class Solution:
    """Distinct haplotypes plus, per genotype, the indices of a resolving pair."""

    haplotypes: tuple[int, ...]
    resolution: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "haplotypes", tuple(int(h) for h in self.haplotypes))
        object.__setattr__(self, "resolution", tuple(tuple(p) for p in self.resolution))
        if len(set(self.haplotypes)) != len(self.haplotypes):
            raise InvariantError("solution haplotypes are not distinct")

    @property
    def size(self) -> int:
        return len(self.haplotypes)

    def __len__(self) -> int:
        return len(self.haplotypes)

    def check(self, instance: Instance) -> None:
        """Raise :class:`InvariantError` unless the stored witness resolves ``instance``."""
        if len(self.resolution) != instance.n:
            raise InvariantError("resolution witness has the wrong length")
        for g, (i, j) in zip(instance.genotypes, self.resolution):
            if i == j or self.haplotypes[i] ^ self.haplotypes[j] != g:
                raise InvariantError("resolution witness does not resolve its genotype")


def resolve_pair(h1: int, h2: int) -> int:
    """The genotype resolved by two distinct haplotypes."""
    if h1 == h2:
        raise UsageError("a resolving pair needs two distinct haplotypes")
    return h1 ^ h2


def _dedupe(haplotypes: Iterable[int]) -> list[int]:
    seen: dict[int, None] = {}
    for h in haplotypes:
        seen.setdefault(int(h), None)
    return list(seen)


def verify(instance: Instance, haplotypes: Iterable[int]) -> Solution | None:
    """Find a resolving pair for every genotype, or return ``None``.

    Uses a membership lookup of ``x ^ h`` over ``h`` so the cost is
    ``O(n * |H|)``.  Duplicate haplotypes are dropped first.
    """
    hs = _dedupe(haplotypes)
    where = {h: i for i, h in enumerate(hs)}
    pairs = []
    for x in instance.genotypes:
        for i, h in enumerate(hs):
            j = where.get(h ^ x)
            if j is not None:
                pairs.append((min(i, j), max(i, j)))
                break
        else:
            return None
    return Solution(tuple(hs), tuple(pairs))


@dataclass(frozen=True)
class XorGraph:
    """Vertices labelled by haplotypes, edge ``k`` labelled by genotype ``k``."""

    alphabet: tuple[str, ...]
    haplotypes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.haplotypes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees()))

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for k, (u, v) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    def validate(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise InvariantError("edge labels are not a bijection")
        seen = set()
        for (u, v), lab in zip(self.edges, self.labels):
            if u == v:
                raise InvariantError("loop in xor-graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvariantError("parallel edges in xor-graph")
            seen.add(key)
            if self.haplotypes[u] ^ self.haplotypes[v] != lab:
                raise InvariantError("edge label differs from endpoint xor")


def build_xor_graph(instance: Instance, solution: Solution) -> XorGraph:
    """The xor-graph of a verified solution: one edge per genotype."""
    solution.check(instance)
    graph = XorGraph(
        instance.alphabet,
        solution.haplotypes,
        tuple((min(i, j), max(i, j)) for i, j in solution.resolution),
        instance.genotypes,
    )
    graph.validate()
    return graph


def _tree_path(parent_edge, parent, depth, u, v):
    """Edges on the forest path between ``u`` and ``v``."""
    left, right = [], []
    while depth[u] > depth[v]:
        left.append(parent_edge[u])
        u = parent[u]
    while depth[v] > depth[u]:
        right.append(parent_edge[v])
        v = parent[v]
    while u != v:
        left.append(parent_edge[u])
        right.append(parent_edge[v])
        u, v = parent[u], parent[v]
    return left + right[::-1]


def label_vertices(n_vertices: int, edges: Sequence[tuple[int, int]], labels: Sequence[int]) -> list[int]:
    """Assign haplotypes to the vertices of an edge-labelled graph.

    The lowest-index vertex of every connected component gets the null
    haplotype; a depth-first visit propagates ``h[v] = h[w] ^ label``.
    Raises :class:`CycleSumError` naming a cycle whose labels do not xor to
    zero.
    """
    if len(edges) != len(labels):
        raise UsageError("one label per edge is required")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
    for k, (u, v) in enumerate(edges):
        adj[u].append((v, k))
        adj[v].append((u, k))
    hap = [None] * n_vertices
    parent = [-1] * n_vertices
    parent_edge = [-1] * n_vertices
    depth = [0] * n_vertices
    tree_edges = set()
    for root in range(n_vertices):
        if hap[root] is not None:
            continue
        hap[root] = NULL
        stack = [(root, iter(adj[root]))]
        while stack:
            w, it = stack[-1]
            for v, k in it:
                if hap[v] is None:
                    hap[v] = hap[w] ^ labels[k]
                    parent[v], parent_edge[v], depth[v] = w, k, depth[w] + 1
                    tree_edges.add(k)
                    stack.append((v, iter(adj[v])))
                    break
            else:
                stack.pop()
    for k, (u, v) in enumerate(edges):
        if k in tree_edges:
            continue
        if hap[u] ^ hap[v] != labels[k]:
            cycle = _tree_path(parent_edge, parent, depth, u, v) + [k]
            raise CycleSumError(f"cycle {cycle} has a non-empty label xor", cycle)
    return hap


def fundamental_cycle_check(graph: XorGraph) -> bool:
    """True iff every fundamental cycle of a depth-first forest has label xor zero."""
    try:
        label_vertices(graph.n_vertices, graph.edges, graph.labels)
    except CycleSumError:
        return False
    return True


def translate(haplotypes: Iterable[int], shift: int) -> list[int]:
    """Xor every haplotype with ``shift``; pairwise xors are unchanged."""
    return [h ^ shift for h in haplotypes]


def character_cut(graph: XorGraph, char: str | int) -> list[int]:
    """Indices of the edges whose label contains ``char``."""
    if isinstance(char, str):
        try:
            j = graph.alphabet.index(char)
        except ValueError:
            raise UsageError(f"unknown character {char!r}") from None
    else:
        j = int(char)
        if not 0 <= j < len(graph.alphabet):
            raise UsageError(f"character index {j} out of range")
    return [k for k, lab in enumerate(graph.labels) if (lab >> j) & 1]
