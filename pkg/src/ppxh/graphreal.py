"""Graph realization: find a graph and spanning tree whose fundamental cycles
are a prescribed family of element sets.

A :class:`RealizationSession` keeps, for every 2-connected block of the current
realization, its canonical decomposition into cycles (``S``), bonds (``P``)
and 3-connected skeletons (``R``) glued along pairs of virtual edges.  Every
graph with the same cycle matroid is obtained by reordering cycles and
flipping at virtual pairs, so adding a set ``(c, P)`` only asks whether some
such rearrangement turns ``P`` into a path.  That question is answered by a
dynamic program over the smallest subtree of members holding ``P``; the
affected members are then glued, the new edge is added, and the glued piece
is decomposed again.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import BudgetError, InvariantError, UsageError

__all__ = [
    "RealizationFamily",
    "LabeledRealization",
    "RealizationSession",
    "realize",
    "brute_force_realize",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 7

F, H, HT, D = "F", "H", "HT", "D"


@dataclass(frozen=True)
class RealizationFamily:
    """Tree elements plus one ``(cotree element, tree path set)`` pair per set."""

    tree_elements: tuple
    pairs: tuple  # ((c, frozenset of tree elements), ...)

    def __post_init__(self):
        tree = tuple(self.tree_elements)
        object.__setattr__(self, "tree_elements", tree)
        if len(set(tree)) != len(tree):
            raise UsageError("duplicate tree elements")
        tset = set(tree)
        seen = set()
        pairs = []
        for c, path in self.pairs:
            path = frozenset(path)
            if c in tset:
                raise UsageError(f"cotree element {c!r} is also a tree element")
            if c in seen:
                raise UsageError(f"cotree element {c!r} used by two sets")
            seen.add(c)
            if not path <= tset:
                raise UsageError(f"set for {c!r} mentions unknown elements {sorted(map(str, path - tset))}")
            if len(path) < 2:
                raise UsageError(f"set for {c!r} needs at least two tree elements")
            pairs.append((c, path))
        object.__setattr__(self, "pairs", tuple(pairs))

    @classmethod
    def from_sets(cls, tree_elements: Iterable[Hashable], sets: Iterable[Iterable[Hashable]]) -> "RealizationFamily":
        """Build from sets ``F_i`` that each contain exactly one non-tree element."""
        tree = tuple(tree_elements)
        tset = set(tree)
        pairs = []
        for s in sets:
            s = set(s)
            extra = s - tset
            if len(extra) != 1:
                raise UsageError(f"each set needs exactly one cotree element, got {len(extra)}")
            (c,) = extra
            pairs.append((c, frozenset(s & tset)))
        return cls(tree, tuple(pairs))

    @property
    def cotree_elements(self) -> tuple:
        return tuple(c for c, _ in self.pairs)

    @property
    def sets(self) -> list[frozenset]:
        return [path | {c} for c, path in self.pairs]

    def prefix(self, k: int) -> "RealizationFamily":
        return RealizationFamily(self.tree_elements, self.pairs[:k])


@dataclass(frozen=True)
class LabeledRealization:
    """A simple graph on ``n_vertices`` vertices with one labelled edge per element."""

    n_vertices: int
    edges: tuple  # ((u, v, element), ...)
    tree_map: dict
    cotree_map: dict

    def tree_path(self, u: int, v: int) -> list:
        """Elements on the spanning-tree path from ``u`` to ``v``."""
        adj = defaultdict(list)
        for i in self.tree_map.values():
            a, b, lab = self.edges[i]
            adj[a].append((b, lab))
            adj[b].append((a, lab))
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y, lab in adj[x]:
                if y not in prev:
                    prev[y] = (x, lab)
                    queue.append(y)
        if v not in prev:
            raise InvariantError("tree does not connect the endpoints")
        out = []
        while prev[v] is not None:
            v, lab = prev[v]
            out.append(lab)
        return out

    def check(self, family: RealizationFamily) -> None:
        """Raise :class:`InvariantError` unless this graph realizes ``family``."""
        if set(self.tree_map) != set(family.tree_elements):
            raise InvariantError("tree labels differ from the family")
        if set(self.cotree_map) != set(family.cotree_elements):
            raise InvariantError("cotree labels differ from the family")
        if len(self.tree_map) != self.n_vertices - 1:
            raise InvariantError("tree edge count is not |V| - 1")
        seen = set()
        for u, v, _ in self.edges:
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                raise InvariantError("realization is not a simple graph")
            seen.add(key)
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in self.tree_map.values():
            a, b = find(self.edges[i][0]), find(self.edges[i][1])
            if a == b:
                raise InvariantError("tree edges contain a cycle")
            parent[a] = b
        for c, path in family.pairs:
            u, v, _ = self.edges[self.cotree_map[c]]
            got = self.tree_path(u, v)
            if len(got) != len(path) or set(got) != path:
                raise InvariantError(f"fundamental cycle of {c!r} differs from its set")

    def verifies(self, family: RealizationFamily) -> bool:
        try:
            self.check(family)
        except InvariantError:
            return False
        return True


def _build_realization(family: RealizationFamily, edges: Sequence[tuple]) -> LabeledRealization:
    """Renumber vertices densely and index edges by label."""
    ids: dict = {}
    out = []
    for u, v, lab in edges:
        for x in (u, v):
            if x not in ids:
                ids[x] = len(ids)
        out.append((ids[u], ids[v], lab))
    if not ids:
        ids[0] = 0
    tset = set(family.tree_elements)
    tree_map = {lab: i for i, (_, _, lab) in enumerate(out) if lab in tset}
    cotree_map = {lab: i for i, (_, _, lab) in enumerate(out) if lab not in tset}
    return LabeledRealization(len(ids), tuple(out), tree_map, cotree_map)


# ---------------------------------------------------------------------------
# decomposition store


class _Edge:
    __slots__ = ("u", "v", "label", "twin", "member")

    def __init__(self, u, v, label=None, twin=None, member=None):
        self.u, self.v, self.label, self.twin, self.member = u, v, label, twin, member


class _Member:
    __slots__ = ("kind", "edges", "block")

    def __init__(self, kind, edges, block):
        self.kind, self.edges, self.block = kind, set(edges), block


@dataclass
class _Witness:
    layout: dict | None  # edge -> local endpoints; None means the skeleton itself
    reqs: dict  # child marker -> (type, key vertex or None)
    seps: tuple | None  # local endpoints of the parent marker
    key: object  # H: end vertex, HT: passed vertex


def _classify(qedges, seps):
    """Shape of the path pieces ``qedges`` relative to separation pair ``seps``.

    Returns ``(type, key)`` for a non-root member, ``("root", ends)`` when
    ``seps`` is None, or None if the pieces cannot be part of one path.
    """
    adj = defaultdict(list)
    for x, y in qedges:
        if x == y:
            return None
        adj[x].append(y)
        adj[y].append(x)
    if any(len(n) > 2 for n in adj.values()):
        return None
    seen = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        verts = []
        while stack:
            x = stack.pop()
            verts.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        ends = [x for x in verts if len(adj[x]) == 1]
        if len(ends) != 2:  # a cycle
            return None
        comps.append((ends, set(verts)))
    if seps is None:
        if len(comps) != 1:
            return None
        return "root", tuple(comps[0][0])
    u0, v0 = seps
    if len(comps) == 1:
        ends, verts = comps[0]
        es = set(ends)
        if es == {u0, v0}:
            return F, None
        for s, o in ((u0, v0), (v0, u0)):
            if s in es:
                if o in verts:
                    return HT, o
                return H, s
        return None
    if len(comps) == 2:
        hit = []
        for ends, verts in comps:
            inside = verts & {u0, v0}
            if len(inside) != 1:
                return None
            (s,) = inside
            if s not in ends:
                return None
            hit.append(s)
        if set(hit) == {u0, v0}:
            return D, None
    return None


def _child_gadget(typ, key, a, b, tag):
    """Path pieces that a child of shape ``typ`` contributes at marker ``(a, b)``."""
    if typ == F:
        return [(a, b)]
    if typ == H:
        return [(key, ("pend", tag, 0))]
    if typ == HT:
        return [(a, b), (key, ("pend", tag, 0))]
    return [(a, ("pend", tag, 0)), (b, ("pend", tag, 1))]


def _child_options(feas):
    """All non-F (type, key-side) choices; key side 0/1 picks the marker endpoint."""
    opts = []
    for typ in (H, HT):
        if typ in feas:
            opts.append((typ, 0))
            opts.append((typ, 1))
    if D in feas:
        opts.append((D, None))
    return opts


def _assignments(kids, feas):
    """Type choices for child markers with at most two non-F children."""
    forced = [k for k in kids if F not in feas[k]]
    if len(forced) > 2:
        return
    optional = [k for k in kids if F in feas[k] and len(feas[k]) > 1]
    for extra in range(0, 3 - len(forced)):
        for chosen in itertools.combinations(optional, extra):
            nonf = forced + list(chosen)
            for combo in itertools.product(*(_child_options(feas[k]) for k in nonf)):
                yield dict(zip(nonf, combo))


class RealizationSession:
    """Incremental realization; :meth:`add_set` accepts a set only if the
    enlarged family stays realizable and otherwise leaves the state untouched."""

    def __init__(self, tree_elements: Iterable[Hashable]):
        self.tree_elements = tuple(tree_elements)
        if len(set(self.tree_elements)) != len(self.tree_elements):
            raise UsageError("duplicate tree elements")
        self._tree = set(self.tree_elements)
        self._pairs: list[tuple] = []
        self._paths: set[frozenset] = set()
        self._used: set = set()
        self._edges: dict[int, _Edge] = {}
        self._members: dict[int, _Member] = {}
        self._blocks: dict[int, set[int]] = {}
        self._where: dict = {}  # element -> edge id
        self._next = 0

    # -- bookkeeping ---------------------------------------------------------

    def _fresh(self) -> int:
        self._next += 1
        return self._next

    def _new_edge(self, u, v, label=None) -> int:
        eid = self._fresh()
        self._edges[eid] = _Edge(u, v, label)
        if label is not None:
            self._where[label] = eid
        return eid

    def _virtual_pair(self, a, b) -> tuple[int, int]:
        x, y = self._new_edge(a, b), self._new_edge(a, b)
        self._edges[x].twin, self._edges[y].twin = y, x
        return x, y

    def _add_member(self, kind, edges, block) -> int:
        mid = self._fresh()
        self._members[mid] = _Member(kind, edges, block)
        self._blocks.setdefault(block, set()).add(mid)
        for e in edges:
            self._edges[e].member = mid
        return mid

    def _drop_member(self, mid) -> None:
        m = self._members.pop(mid)
        self._blocks[m.block].discard(mid)

    def _neighbours(self, mid):
        for e in self._members[mid].edges:
            t = self._edges[e].twin
            if t is not None:
                yield e, t, self._edges[t].member

    @property
    def family(self) -> RealizationFamily:
        return RealizationFamily(self.tree_elements, tuple(self._pairs))

    def __len__(self) -> int:
        return len(self._pairs)

    # -- public API ----------------------------------------------------------

    def add_set(self, c: Hashable, path: Iterable[Hashable]) -> bool:
        path = frozenset(path)
        if c in self._tree or c in self._used:
            raise UsageError(f"cotree element {c!r} is already in use")
        if not path <= self._tree:
            raise UsageError(f"set for {c!r} mentions unknown tree elements")
        if len(path) < 2:
            raise UsageError(f"set for {c!r} needs at least two tree elements")
        if path in self._paths:
            return False  # its edge would be parallel to an existing one
        coloops = []
        groups: dict[int, set[int]] = {}
        for t in sorted(path, key=self.tree_elements.index):
            e = self._where.get(t)
            if e is None:
                coloops.append(t)
            else:
                groups.setdefault(self._members[self._edges[e].member].block, set()).add(e)
        plans = []
        for block, q in groups.items():
            plan = self._evaluate(q)
            if plan is None:
                return False
            plans.append(plan)

        new_edges = [self._commit(plan) for plan in plans]
        if len(new_edges) == 1 and not coloops:
            e = new_edges[0]
            self._edges[e].label = c
            self._where[c] = e
        else:
            blocks = sorted(groups)
            target = blocks[0] if blocks else self._fresh()
            for b in blocks[1:]:
                for mid in self._blocks.pop(b):
                    self._members[mid].block = target
                    self._blocks.setdefault(target, set()).add(mid)
            labels = [c] + coloops
            k = len(labels) + len(new_edges)
            verts = [self._fresh() for _ in range(k)]
            cycle = []
            for i, lab in enumerate(labels):
                cycle.append(self._new_edge(verts[i], verts[(i + 1) % k], lab))
            for j, e in enumerate(new_edges):
                i = len(labels) + j
                w = self._new_edge(verts[i], verts[(i + 1) % k])
                self._edges[w].twin, self._edges[e].twin = e, w
                cycle.append(w)
            mid = self._add_member("S", cycle, target)
            for e in new_edges:
                other = self._edges[e].member
                if self._members[other].kind == "S":
                    mid = self._merge(mid, self._edges[e].twin)
        self._pairs.append((c, path))
        self._paths.add(path)
        self._used.add(c)
        return True

    def realize(self) -> LabeledRealization:
        """The current realization, re-verified before it is returned.

        Blocks and bridges share one vertex; any such gluing has the same
        fundamental cycles.
        """
        hub = self._fresh()
        out = []
        for block in sorted(self._blocks):
            mids = self._blocks[block]
            if not mids:
                continue
            glued = self._glue(min(mids), None, {})
            first = glued[0][1]
            for eid, u, v in glued:
                out.append((hub if u == first else u, hub if v == first else v, self._edges[eid].label))
        for t in self.tree_elements:
            if t not in self._where:
                out.append((hub, self._fresh(), t))
        result = _build_realization(self.family, out)
        result.check(self.family)
        return result

    # -- gluing --------------------------------------------------------------

    def _glue(self, mid, from_edge, phi):
        """Concrete edges of the subtree at ``mid`` (not crossing ``from_edge``)."""
        out = []
        stack = [(mid, from_edge, dict(phi))]
        while stack:
            m, skip, mp = stack.pop()

            def V(x, mp=mp):
                if x not in mp:
                    mp[x] = self._fresh()
                return mp[x]

            for e in sorted(self._members[m].edges):
                if e == skip:
                    continue
                ed = self._edges[e]
                a, b = V(ed.u), V(ed.v)
                if ed.twin is None:
                    out.append((e, a, b))
                else:
                    tw = self._edges[ed.twin]
                    stack.append((tw.member, ed.twin, {tw.u: a, tw.v: b}))
        return out

    # -- evaluation ----------------------------------------------------------

    def _evaluate(self, q: set[int]):
        members_q = {self._edges[e].member for e in q}
        root = self._edges[min(q)].member
        parent: dict[int, tuple] = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            m = queue.popleft()
            for e, t, other in self._neighbours(m):
                if other not in parent:
                    parent[other] = (m, e, t)  # e: marker in parent, t: marker in child
                    order.append(other)
                    queue.append(other)
        tmembers = {root}
        for m in members_q:
            while m not in tmembers:
                tmembers.add(m)
                m = parent[m][0]
        kids: dict[int, list[int]] = defaultdict(list)  # marker edges in parent leading to T-children
        for m in tmembers:
            if m != root:
                kids[parent[m][0]].append(parent[m][1])
        feas: dict[int, dict] = {}
        for m in reversed(order):
            if m not in tmembers:
                continue
            pm = parent[m][2] if m != root else None
            kfeas = {e: feas[self._edges[self._edges[e].twin].member] for e in kids[m]}
            res = self._eval_member(m, pm, q, kids[m], kfeas, want_root=(m == root))
            if not res:
                return None
            feas[m] = res
        return root, tmembers, parent, feas, q

    def _eval_member(self, mid, pm, q, kids, kfeas, want_root):
        member = self._members[mid]
        if member.kind == "S":
            return self._eval_cycle(mid, pm, q, kids, kfeas, want_root)
        found: dict = {}
        base = [(self._edges[e].u, self._edges[e].v) for e in member.edges if e in q]
        seps = None if pm is None else (self._edges[pm].u, self._edges[pm].v)
        for assign in _assignments(kids, kfeas):
            qedges = list(base)
            reqs = {}
            for e in kids:
                a, b = self._edges[e].u, self._edges[e].v
                typ, side = assign.get(e, (F, None))
                key = None if side is None else (a, b)[side]
                qedges.extend(_child_gadget(typ, key, a, b, e))
                reqs[e] = (typ, key)
            got = _classify(qedges, seps)
            if got is None:
                continue
            typ, key = got
            if want_root:
                return {"root": _Witness(None, reqs, None, key)}
            if typ not in found:
                found[typ] = _Witness(None, reqs, seps, key)
                if len(found) == 4:
                    break
        return found

    def _eval_cycle(self, mid, pm, q, kids, kfeas, want_root):
        member = self._members[mid]
        kidset = set(kids)
        real_q = sorted(e for e in member.edges if e in q)
        zs = sorted(e for e in member.edges if e not in q and e not in kidset and e != pm)
        found: dict = {}
        for assign in _assignments(kids, kfeas):
            plain_q = real_q + sorted(e for e in kids if e not in assign)
            specials = ([("PM", pm)] if pm is not None else []) + [("C", e) for e in sorted(assign)]
            nq, nz = len(plain_q), len(zs)
            for rq in ([0] if nq == 0 else [1] if nq == 1 else [1, 2]):
                tokens = specials + [("Q", i) for i in range(rq)]
                if not tokens:
                    continue
                first, rest = tokens[0], tokens[1:]
                seen_perm = set()
                for perm in itertools.permutations(rest):
                    shape = tuple(t[0] if t[0] == "Q" else t for t in perm)
                    if shape in seen_perm:
                        continue
                    seen_perm.add(shape)
                    seq = [first] + list(perm)
                    n = len(seq)
                    for mask in range(1 << n):
                        nzr = bin(mask).count("1")
                        if (nz == 0 and nzr) or (nz and not 1 <= nzr <= nz):
                            continue
                        cyc = []
                        for i, tok in enumerate(seq):
                            cyc.append(tok)
                            if mask >> i & 1:
                                cyc.append(("Z", i))
                        res = self._try_cycle(cyc, assign, plain_q, zs, kids, want_root, found)
                        if res is not None and want_root:
                            return res
                        if len(found) == 4:
                            return found
        return found

    def _try_cycle(self, cyc, assign, plain_q, zs, kids, want_root, found):
        L = len(cyc)
        sides = [assign[t[1]][1] for t in cyc if t[0] == "C"]
        choices = [(0, 1) if s is not None else (None,) for s in sides]
        for orient in itertools.product(*choices):
            it = iter(orient)
            qedges, seps, keys = [], None, {}
            for i, tok in enumerate(cyc):
                a, b = i, (i + 1) % L
                if tok[0] == "Q":
                    qedges.append((a, b))
                elif tok[0] == "PM":
                    seps = (a, b)
                elif tok[0] == "C":
                    typ = assign[tok[1]][0]
                    o = next(it)
                    key = None if o is None else (a, b)[o]
                    keys[tok[1]] = key
                    qedges.extend(_child_gadget(typ, key, a, b, tok[1]))
            got = _classify(qedges, seps)
            if got is None:
                continue
            typ, key = got
            if not want_root and typ in found:
                continue
            wit = self._cycle_witness(cyc, assign, keys, plain_q, zs, kids, seps, None if want_root else key)
            if want_root:
                return {"root": wit}
            found[typ] = wit
        return None

    def _cycle_witness(self, cyc, assign, keys, plain_q, zs, kids, seps, key):
        """Lay the member's edges out along the token cycle."""
        nq = sum(1 for t in cyc if t[0] == "Q")
        nzr = sum(1 for t in cyc if t[0] == "Z")
        qruns = [plain_q[:len(plain_q) - nq + 1]] + [[e] for e in plain_q[len(plain_q) - nq + 1:]] if nq else []
        zruns = [[e] for e in zs[:nzr - 1]] + [zs[nzr - 1:]] if nzr else []
        layout = {}
        pos = 0  # local vertex before the next edge
        token_vertex = {}
        expanded = []
        qi = zi = 0
        for i, tok in enumerate(cyc):
            token_vertex[i] = pos
            if tok[0] == "Q":
                items = qruns[qi]
                qi += 1
            elif tok[0] == "Z":
                items = zruns[zi]
                zi += 1
            else:
                items = [tok[1]]
            for e in items:
                expanded.append((e, pos, pos + 1))
                pos += 1
        total = pos
        token_vertex[len(cyc)] = 0
        for e, x, y in expanded:
            layout[e] = (x, y % total)

        def tv(i):
            return token_vertex[i] if i < len(cyc) else 0

        def local(x):
            return None if x is None else tv(x)

        reqs = {}
        for e in kids:
            if e in assign:
                reqs[e] = (assign[e][0], local(keys[e]))
            else:
                reqs[e] = (F, None)
        lseps = None if seps is None else (local(seps[0]), local(seps[1]))
        return _Witness(layout, reqs, lseps, local(key))

    # -- commit --------------------------------------------------------------

    def _commit(self, plan) -> int:
        """Apply an evaluated plan; returns the id of the new edge closing the path."""
        root, tmembers, parent, feas, q = plan
        block = self._members[root].block
        if len(tmembers) == 1 and self._members[root].kind in "RP":
            return self._commit_single(root, q)
        glued = self._glue_plan(root, feas)
        qset = set(q)
        deg = defaultdict(int)
        for e, u, v in glued:
            if e in qset:
                deg[u] += 1
                deg[v] += 1
        ends = [x for x, d in deg.items() if d == 1]
        if len(ends) != 2 or any(d > 2 for d in deg.values()):
            raise InvariantError("glued members do not carry the set as a path")
        internal = [
            e for m in tmembers for e in self._members[m].edges
            if self._edges[e].twin is not None and self._edges[self._edges[e].twin].member in tmembers
        ]
        for e in internal:
            del self._edges[e]
        for m in tmembers:
            self._drop_member(m)
        new = self._new_edge(ends[0], ends[1])
        glued.append((new, ends[0], ends[1]))
        self._install(glued, block)
        return new

    def _commit_single(self, mid, q) -> int:
        m = self._members[mid]
        deg = defaultdict(int)
        for e in q:
            deg[self._edges[e].u] += 1
            deg[self._edges[e].v] += 1
        ends = sorted(x for x, d in deg.items() if d == 1)
        a, b = ends
        new = self._new_edge(a, b)
        if m.kind == "P":
            m.edges.add(new)
            self._edges[new].member = mid
            return new
        par = [e for e in m.edges if {self._edges[e].u, self._edges[e].v} == {a, b}]
        if not par:
            m.edges.add(new)
            self._edges[new].member = mid
            return new
        f = par[0]
        tw = self._edges[f].twin
        if tw is not None and self._members[self._edges[tw].member].kind == "P":
            pmid = self._edges[tw].member
            self._edges[new].u, self._edges[new].v = self._edges[tw].u, self._edges[tw].v
            self._members[pmid].edges.add(new)
            self._edges[new].member = pmid
            return new
        x, y = self._fresh(), self._fresh()
        v_in, v_out = self._virtual_pair(a, b)
        m.edges.discard(f)
        m.edges.add(v_in)
        self._edges[v_in].member = mid
        self._edges[f].u, self._edges[f].v = x, y
        self._edges[new].u, self._edges[new].v = x, y
        self._edges[v_out].u, self._edges[v_out].v = x, y
        self._add_member("P", [f, new, v_out], m.block)
        return new

    def _glue_plan(self, root, feas):
        out = []
        stack = [(root, None, "root", {})]
        while stack:
            mid, pm, typ, phi = stack.pop()
            wit = feas[mid][typ]

            def V(x, phi=phi):
                if x not in phi:
                    phi[x] = self._fresh()
                return phi[x]

            layout = wit.layout
            if layout is None:
                layout = {e: (self._edges[e].u, self._edges[e].v) for e in self._members[mid].edges}
            for e in sorted(layout):
                if e == pm:
                    continue
                x, y = layout[e]
                if e in wit.reqs:
                    ctyp, ckey = wit.reqs[e]
                    A, B = V(x), V(y)
                    t = self._edges[e].twin
                    child = self._edges[t].member
                    cw = feas[child][ctyp]
                    u0, v0 = cw.seps
                    if ctyp in (H, HT):
                        K = V(ckey)
                        other = B if K == A else A
                        cphi = {cw.key: K, (v0 if cw.key == u0 else u0): other}
                    else:
                        cphi = {u0: A, v0: B}
                    stack.append((child, t, ctyp, cphi))
                else:
                    out.append((e, V(x), V(y)))
        return out

    def _install(self, glued, block):
        """Decompose a glued 2-connected piece and link it to the outside."""
        pieces = _split_components([(e, u, v) for e, u, v in glued], self)
        created = []
        for kind, edges in pieces:
            for e, u, v in edges:
                self._edges[e].u, self._edges[e].v = u, v
            created.append(self._add_member(kind, [e for e, _, _ in edges], block))
        pending = deque(created)
        while pending:
            mid = pending.popleft()
            if mid not in self._members:
                continue
            kind = self._members[mid].kind
            if kind == "R":
                continue
            for e, t, other in list(self._neighbours(mid)):
                if self._members[other].kind == kind:
                    mid = self._merge(mid, e)
                    pending.append(mid)
                    break

    def _merge(self, mid, e) -> int:
        """Merge the member across virtual edge ``e`` of ``mid`` into ``mid``."""
        t = self._edges[e].twin
        other = self._edges[t].member
        a, b = self._edges[e].u, self._edges[e].v
        te = self._edges[t]
        mp = {te.u: a, te.v: b}
        keep = self._members[mid]
        for f in self._members[other].edges:
            if f == t:
                continue
            ed = self._edges[f]
            for x in (ed.u, ed.v):
                if x not in mp:
                    mp[x] = self._fresh()
            ed.u, ed.v = mp[ed.u], mp[ed.v]
            ed.member = mid
            keep.edges.add(f)
        keep.edges.discard(e)
        self._drop_member(other)
        del self._edges[e], self._edges[t]
        return mid


def _articulation(adj, removed):
    """Some articulation point of the graph minus ``removed``, or None."""
    verts = [v for v in adj if v != removed]
    if len(verts) < 3:
        return None
    start = verts[0]
    disc = {start: 0}
    low = {start: 0}
    counter = 1
    root_children = 0
    stack = [(start, None, iter(adj[start]))]
    while stack:
        v, par, it = stack[-1]
        advanced = False
        for w in it:
            if w == removed or w == par:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p == start:
                root_children += 1
            elif low[v] >= disc[p]:
                return p
    if root_children > 1:
        return start
    return None


def _split_components(edges, session):
    """Canonical-ready split of a 2-connected multigraph into bonds, cycles and
    3-connected pieces; new virtual pairs are registered in ``session``."""
    out = []
    work = [list(edges)]
    while work:
        es = work.pop()
        verts = {x for _, u, v in es for x in (u, v)}
        if len(verts) == 2:
            out.append(("P", es))
            continue
        groups = defaultdict(list)
        for item in es:
            groups[frozenset(item[1:])].append(item)
        simple = []
        for grp in groups.values():
            if len(grp) == 1:
                simple.append(grp[0])
                continue
            _, a, b = grp[0]
            x, y = session._virtual_pair(a, b)
            out.append(("P", grp + [(y, a, b)]))
            simple.append((x, a, b))
        adj = defaultdict(list)
        for _, u, v in simple:
            adj[u].append(v)
            adj[v].append(u)
        if all(len(n) == 2 for n in adj.values()):
            out.append(("S", simple))
            continue
        pair = None
        for a in sorted(adj):
            b = _articulation(adj, a)
            if b is not None:
                pair = (a, b)
                break
        if pair is None:
            out.append(("R", simple))
            continue
        a, b = pair
        # one component of G - {a, b}
        start = next(v for v in adj if v not in pair)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in pair and y not in comp:
                    comp.add(y)
                    stack.append(y)
        side1 = [it for it in simple if it[1] in comp or it[2] in comp]
        side2 = [it for it in simple if not (it[1] in comp or it[2] in comp)]
        x, y = session._virtual_pair(a, b)
        work.append(side1 + [(x, a, b)])
        work.append(side2 + [(y, a, b)])
    return out


def realize(family: RealizationFamily) -> LabeledRealization | None:
    """A verified realization of ``family``, or None if none exists."""
    session = RealizationSession(family.tree_elements)
    for c, path in family.pairs:
        if not session.add_set(c, path):
            return None
    return session.realize()


def brute_force_realize(family: RealizationFamily) -> LabeledRealization | None:
    """Exhaustive realization by enumerating every tree with labelled edges."""
    tree = family.tree_elements
    k = len(tree)
    if k > BRUTE_FORCE_LIMIT:
        raise BudgetError(f"{k} tree elements exceed the brute-force limit of {BRUTE_FORCE_LIMIT}")
    if len({p for _, p in family.pairs}) != len(family.pairs):
        return None
    pos = {t: i for i, t in enumerate(tree)}
    due = defaultdict(list)  # edge index -> paths completed when it is placed
    for _, path in family.pairs:
        due[max(pos[t] for t in path)].append([pos[t] for t in path])
    ends: list[tuple[int, int]] = [(0, 0)] * k
    comp = list(range(k + 1))

    def is_path(idx):
        deg = defaultdict(int)
        for i in idx:
            deg[ends[i][0]] += 1
            deg[ends[i][1]] += 1
        if any(d > 2 for d in deg.values()):
            return False
        # a forest with |V| = |E| + 1 and degrees <= 2 is a single path
        return len(deg) == len(idx) + 1

    def place(i, used):
        if i == k:
            return used == k + 1
        if k + 1 - used > 2 * (k - i):
            return False
        cands = []
        for u in range(used):
            for v in range(u + 1, used):
                cands.append((u, v))
            if used <= k:
                cands.append((u, used))
        if used + 1 <= k:
            cands.append((used, used + 1))
        for u, v in cands:
            if u < used and v < used and comp[u] == comp[v]:
                continue
            nused = max(used, v + 1)
            saved = comp[:]
            cu, cv = comp[u], comp[v]
            for x in range(k + 1):
                if comp[x] == cv:
                    comp[x] = cu
            ends[i] = (u, v)
            if all(is_path(idx) for idx in due[i]) and place(i + 1, nused):
                return True
            comp[:] = saved
        return False

    if k and not place(0, 0):
        return None
    edges = [(u, v, t) for (u, v), t in zip(ends, tree)]
    for c, path in family.pairs:
        deg = defaultdict(int)
        for t in path:
            u, v = ends[pos[t]]
            deg[u] += 1
            deg[v] += 1
        a, b = (x for x, d in deg.items() if d == 1)
        edges.append((a, b, c))
    result = _build_realization(family, edges)
    result.check(family)
    return result
