"""Instance, solution and family file formats, the generator, and DOT export."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import comb
from pathlib import Path

from .errors import ParseError, UsageError
from .model import Instance, XorGraph, default_names, format_set
from .graphreal import RealizationFamily

__all__ = [
    "parse_instance",
    "parse_instance_text",
    "from_diploid",
    "format_instance",
    "parse_solution",
    "format_solution",
    "parse_family",
    "GeneratedInstance",
    "generate",
    "export_dot",
    "dot_text",
]

log = logging.getLogger(__name__)


def _lines(text: str):
    """Non-blank lines with their numbers; ``#`` lines are kept for headers."""
    for no, line in enumerate(text.splitlines(), 1):
        if line.strip():
            yield no, line.strip()


def _header(line: str):
    if line.startswith("#"):
        names = line[1:].split()
        return tuple(names) if names else None
    return None


def _dedupe(rows, alphabet):
    seen: dict[int, None] = {}
    for g in rows:
        if g in seen:
            log.warning("duplicate genotype %s dropped", format_set(g, alphabet))
        seen.setdefault(g, None)
    return tuple(seen)


def _parse_matrix(lines, alphabet):
    rows = []
    width = None
    for no, line in lines:
        tokens = line.split()
        if width is None:
            width = len(tokens)
        elif len(tokens) != width:
            raise ParseError(f"line {no}: expected {width} entries, found {len(tokens)}")
        bits = 0
        for j, tok in enumerate(tokens):
            if tok == "1":
                bits |= 1 << j
            elif tok != "0":
                raise ParseError(f"line {no}: entry {tok!r} is not 0 or 1")
        if not bits:
            raise ParseError(f"line {no}: empty genotype")
        rows.append(bits)
    width = width or 0
    if alphabet is None:
        alphabet = default_names(width)
    elif len(alphabet) != width:
        raise ParseError(f"header names {len(alphabet)} characters but rows have {width}")
    return Instance(alphabet, _dedupe(rows, alphabet))


def _parse_sets(lines, alphabet):
    sets = []
    for no, line in lines:
        tokens = line.replace(",", " ").replace("{", " ").replace("}", " ").split()
        if not tokens:
            raise ParseError(f"line {no}: empty genotype")
        sets.append((no, tokens))
    if alphabet is None:
        names: dict[str, None] = {}
        for _, tokens in sets:
            names.update(dict.fromkeys(tokens))
        alphabet = tuple(names)
    index = {ch: j for j, ch in enumerate(alphabet)}
    rows = []
    for no, tokens in sets:
        bits = 0
        for tok in tokens:
            if tok not in index:
                raise ParseError(f"line {no}: unknown character {tok!r}")
            bits |= 1 << index[tok]
        rows.append(bits)
    return Instance(tuple(alphabet), _dedupe(rows, alphabet))


def parse_instance_text(text: str, fmt: str = "auto") -> Instance:
    """Parse matrix text (0/1 rows) or set text (character tokens per line).

    An optional first line ``# a b c`` names the characters.
    """
    lines = list(_lines(text))
    alphabet = None
    if lines and lines[0][1].startswith("#"):
        alphabet = _header(lines[0][1])
        lines = lines[1:]
    lines = [(no, line) for no, line in lines if not line.startswith("#")]
    if fmt == "auto":
        fmt = "matrix" if all(set(line.split()) <= {"0", "1"} for _, line in lines) else "sets"
    if fmt == "matrix":
        return _parse_matrix(lines, alphabet)
    if fmt == "sets":
        return _parse_sets(lines, alphabet)
    if fmt == "diploid":
        return _parse_diploid(lines, alphabet)
    raise UsageError(f"unknown instance format {fmt!r}")


def parse_instance(path, fmt: str = "auto") -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_instance_text(text, fmt)


def _parse_diploid(lines, alphabet):
    converted = []
    for no, line in lines:
        out = []
        for tok in line.split():
            if tok not in ("0", "1", "2"):
                raise ParseError(f"line {no}: diploid entry {tok!r} is not 0, 1 or 2")
            out.append("1" if tok == "1" else "0")
        converted.append((no, " ".join(out)))
    return _parse_matrix(converted, alphabet)


def from_diploid(path) -> Instance:
    """Xor-genotypes of 0/1/2 diploid rows: heterozygous sites (1) become set bits."""
    return parse_instance(path, "diploid")


def format_instance(instance: Instance) -> str:
    lines = ["# " + " ".join(instance.alphabet)]
    for g in instance.genotypes:
        lines.append(" ".join("1" if (g >> j) & 1 else "0" for j in range(instance.m)))
    return "\n".join(lines) + "\n"


def format_solution(haplotypes, alphabet) -> str:
    """Haplotypes as a 0/1 matrix with the character header."""
    lines = ["# " + " ".join(alphabet)]
    for h in haplotypes:
        lines.append(" ".join("1" if (h >> j) & 1 else "0" for j in range(len(alphabet))))
    return "\n".join(lines) + "\n"


def parse_solution(path, alphabet) -> list[int]:
    """Haplotype rows over ``alphabet``; a header, if present, may reorder columns."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    lines = list(_lines(text))
    order = list(range(len(alphabet)))
    if lines and lines[0][1].startswith("#"):
        names = _header(lines[0][1]) or ()
        index = {ch: j for j, ch in enumerate(alphabet)}
        try:
            order = [index[ch] for ch in names]
        except KeyError as exc:
            raise ParseError(f"solution header names unknown character {exc.args[0]!r}") from None
        lines = lines[1:]
    haps = []
    for no, line in lines:
        tokens = line.split()
        if len(tokens) != len(order):
            raise ParseError(f"line {no}: expected {len(order)} entries, found {len(tokens)}")
        bits = 0
        for j, tok in zip(order, tokens):
            if tok == "1":
                bits |= 1 << j
            elif tok != "0":
                raise ParseError(f"line {no}: entry {tok!r} is not 0 or 1")
        haps.append(bits)
    return haps


def parse_family(path) -> RealizationFamily:
    """``T: t1 t2 ...`` followed by one ``c: t_j t_k ...`` line per set."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    tree = None
    pairs = []
    for no, line in _lines(text):
        if line.startswith("#"):
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"line {no}: expected 'name: elements'")
        head = head.strip()
        if tree is None:
            if head != "T":
                raise ParseError(f"line {no}: the first line must be 'T: ...'")
            tree = tuple(rest.split())
            continue
        pairs.append((head, tuple(rest.split())))
    if tree is None:
        raise ParseError("missing 'T:' line")
    try:
        return RealizationFamily(tree, tuple(pairs))
    except UsageError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class GeneratedInstance:
    instance: Instance
    haplotypes: tuple[int, ...]
    initial_distinct_used: int


def generate(n: int, h: int, m: int, seed: int | None = None, max_tries: int = 10_000) -> GeneratedInstance:
    """Genotypes as xors of random pairs drawn from ``h`` random haplotypes.

    Pairs whose xor repeats an earlier genotype are redrawn.
    """
    if h < 2:
        raise UsageError("at least two haplotypes are needed")
    if m < 1 or n < 0:
        raise UsageError("n must be non-negative and m positive")
    if m < 64 and h > 1 << m:
        raise UsageError(f"cannot draw {h} distinct haplotypes over {m} characters")
    if n > comb(h, 2):
        raise UsageError(f"{h} haplotypes give at most {comb(h, 2)} distinct pairs")
    rng = random.Random(seed)
    haps: dict[int, None] = {}
    while len(haps) < h:
        haps.setdefault(rng.getrandbits(m), None)
    pool = list(haps)
    genotypes: dict[int, None] = {}
    used: set[int] = set()
    tries = 0
    while len(genotypes) < n:
        i, j = rng.sample(range(h), 2)
        g = pool[i] ^ pool[j]
        if g in genotypes:
            tries += 1
            if tries > max_tries:
                raise UsageError("too many repeated genotypes; lower n or raise h or m")
            continue
        genotypes[g] = None
        used.update((i, j))
    instance = Instance(default_names(m), tuple(genotypes))
    return GeneratedInstance(instance, tuple(pool), len(used))


def dot_text(graph: XorGraph) -> str:
    lines = ["graph xor {"]
    for i, h in enumerate(graph.haplotypes):
        label = format_set(h, graph.alphabet, "∅")
        lines.append(f'  v{i} [label="{label}"];')
    for (u, v), lab in zip(graph.edges, graph.labels):
        lines.append(f'  v{u} -- v{v} [label="{format_set(lab, graph.alphabet)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: XorGraph, path) -> None:
    try:
        Path(path).write_text(dot_text(graph))
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None
