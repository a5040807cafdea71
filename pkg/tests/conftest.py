import random

import pytest
from hypothesis import settings, strategies as st

from ppxh.graphreal import RealizationFamily
from ppxh.model import Instance
from ppxh.reduce import reduce

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

WORKED_X = [["a", "b"], ["a", "b", "c"], ["b", "c"], ["c", "d", "e"], ["a"], ["e"], ["a", "c", "e"]]
WORKED_H = [[], ["c", "d"], ["a", "b", "c", "d"], ["a", "c"], ["a", "d"], ["d"], ["e"]]


def sets_to_bits(sets, alphabet="abcde"):
    return [sum(1 << alphabet.index(ch) for ch in s) for s in sets]


@pytest.fixture
def worked():
    return Instance.from_sets(WORKED_X, alphabet=tuple("abcde"))


@pytest.fixture
def worked_h():
    return sets_to_bits(WORKED_H)


def random_instance(rng: random.Random, max_m=4, max_n=6, min_n=1) -> Instance:
    m = rng.randint(1, max_m)
    n = rng.randint(min_n, min(max_n, (1 << m) - 1))
    rows = rng.sample(range(1, 1 << m), n)
    return Instance.from_rows([[(g >> j) & 1 for j in range(m)] for g in rows])


@st.composite
def instances(draw, max_m=4, max_n=6):
    m = draw(st.integers(1, max_m))
    rows = draw(st.lists(st.integers(1, (1 << m) - 1), min_size=1, max_size=max_n, unique=True))
    return Instance(tuple("abcdefghij"[:m]), tuple(rows))


def inf2_instance(rng, max_m=4, max_n=6):
    """Reduced instance where every character sits in at most two genotypes."""
    while True:
        n = rng.randint(1, max_n)
        rows = [0] * n
        for j in range(rng.randint(1, max_m)):
            for i in rng.sample(range(n), min(n, rng.choice((1, 2, 2)))):
                rows[i] |= 1 << j
        rows = list(dict.fromkeys(r for r in rows if r))
        if rows:
            red = reduce(Instance(tuple("abcd"[: max(r.bit_length() for r in rows)]), tuple(rows)))
            if red.instance.n:
                return red.instance


def two_inf_instance(rng, max_m=4, max_n=6):
    m = rng.randint(1, max_m)
    pool = [1 << a for a in range(m)] + [(1 << a) | (1 << b) for a in range(m) for b in range(a + 1, m)]
    rows = rng.sample(pool, rng.randint(1, min(max_n, len(pool))))
    return reduce(Instance(tuple("abcd"[:m]), tuple(rows))).instance


def random_family(rng, max_t=6, max_c=5):
    t = rng.randint(2, max_t)
    tree = [f"t{i}" for i in range(t)]
    pairs = []
    if rng.random() < 0.5:
        # paths of a random tree, so often realizable
        parent = [None] + [rng.randrange(i) for i in range(1, t + 1)]

        def up(v):
            out = []
            while v:
                out.append(v)
                v = parent[v]
            return out

        for c in range(rng.randint(1, max_c)):
            a, b = rng.sample(range(t + 1), 2)
            pa, pb = up(a), up(b)
            path = set(pa) ^ set(pb)
            if len(path) >= 2:
                pairs.append((f"c{c}", frozenset(tree[v - 1] for v in path)))
    else:
        for c in range(rng.randint(1, max_c)):
            pairs.append((f"c{c}", frozenset(rng.sample(tree, rng.randint(2, t)))))
    return RealizationFamily(tuple(tree), tuple(pairs))


def independent_instance(rng, m):
    rows = []
    span = {0}
    while len(rows) < m:
        g = rng.getrandbits(m)
        if g not in span:
            rows.append(g)
            span |= {s ^ g for s in span}
    return Instance(tuple(f"s{j}" for j in range(m)), tuple(rows))
