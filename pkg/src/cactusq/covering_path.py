"""Shortest non-simple 1-covering walks on cactus graphs.

A walk P 1-covers G when every vertex is on P or adjacent to a vertex of
P.  `solve_cactus` finds a minimum-length such walk in polynomial time by
a dynamic program over the block tree of the weighted vertex cactus;
`brute_force_oracle` is the exponential BFS reference used to validate it.

Conventions: `k` is the number of walk elements, `length` = k - 1 edges.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .graph_core import (
    BlockTree,
    Graph,
    WeightedVertexCactus,
    build_block_tree,
    build_vertex_cactus,
    validate_cactus,
)


class TooLarge(Exception):
    """Graph exceeds the brute-force state-space limit."""


@dataclass(frozen=True)
class CoveringPath:
    """A walk with its covered set R_P and fringe B_P = R_P minus the walk."""

    vertices: tuple[int, ...]
    covered: frozenset[int]
    fringe: frozenset[int]

    @staticmethod
    def from_vertices(g: Graph, vertices) -> "CoveringPath":
        vs = tuple(vertices)
        if not vs:
            raise ValueError("a walk needs at least one vertex")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"walk step ({a},{b}) is not an edge")
        on_path = set(vs)
        covered = set(on_path)
        for v in on_path:
            covered.update(g.adjacency[v])
        return CoveringPath(
            vertices=vs,
            covered=frozenset(covered),
            fringe=frozenset(covered - on_path),
        )

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def k_distinct(self) -> int:
        return len(set(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def is_covering(self, g: Graph) -> bool:
        return len(self.covered) == g.n


def brute_force_oracle(g: Graph, limit: int = 16) -> CoveringPath:
    """Exact shortest 1-covering walk by BFS over (vertex, covered-set).

    Exponential in n; raises TooLarge above `limit` vertices.
    """
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds the oracle limit {limit}")
    full = (1 << g.n) - 1
    closed_nbhd = [
        (1 << v) | sum(1 << u for u in g.adjacency[v]) for v in range(g.n)
    ]
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    queue: deque[tuple[int, int]] = deque()
    for v in range(g.n):
        state = (v, closed_nbhd[v])
        if state not in parent:
            parent[state] = None
            queue.append(state)
    while queue:
        v, mask = state = queue.popleft()
        if mask == full:
            walk: list[int] = []
            cur: tuple[int, int] | None = state
            while cur is not None:
                walk.append(cur[0])
                cur = parent[cur]
            walk.reverse()
            return CoveringPath.from_vertices(g, walk)
        for u in g.adjacency[v]:
            nxt = (u, mask | closed_nbhd[u])
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    raise AssertionError("connected graph must admit a covering walk")


def brute_force_visit_all(g: Graph, limit: int = 16) -> CoveringPath:
    """Shortest walk visiting every vertex (BFS over (vertex, visited-set))."""
    if g.n > limit:
        raise TooLarge(f"n={g.n} exceeds the oracle limit {limit}")
    full = (1 << g.n) - 1
    parent: dict[tuple[int, int], tuple[int, int] | None] = {}
    queue: deque[tuple[int, int]] = deque()
    for v in range(g.n):
        state = (v, 1 << v)
        parent[state] = None
        queue.append(state)
    while queue:
        v, mask = state = queue.popleft()
        if mask == full:
            walk: list[int] = []
            cur: tuple[int, int] | None = state
            while cur is not None:
                walk.append(cur[0])
                cur = parent[cur]
            walk.reverse()
            return CoveringPath.from_vertices(g, walk)
        for u in g.adjacency[v]:
            nxt = (u, mask | (1 << u))
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    raise AssertionError("connected graph must admit a visiting walk")


# ---------------------------------------------------------------------------
# Dynamic program over the rooted block tree.
#
# For a block rooted below its parent, d_l is the minimum weight of a walk
# that starts and ends at the block's entry vertex while covering the whole
# subtree; d_p drops the requirement to return.  A child block contributes
# nothing (it is "skipped") exactly when it is a single vertex with no
# children of its own: the parent's visit already covers it.  Any child with
# children must be entered, because grandchildren are only covered from
# inside.
# ---------------------------------------------------------------------------


@dataclass
class ChildContribution:
    """Summary of one child subtree as seen from its attach vertex."""

    block: int
    entry: int
    w: int
    d_l: int
    d_p: int
    skipped: bool

    @property
    def closed_cost(self) -> int:
        return self.d_l + 2 * self.w

    @property
    def saving(self) -> int:
        """Gain from ending the walk inside this subtree instead of returning."""
        return self.d_l - self.d_p + self.w


@dataclass
class DpTables:
    """Per-block DP values and backtracking records for one rooting."""

    d_l: dict[int, int] = field(default_factory=dict)
    d_p: dict[int, int] = field(default_factory=dict)
    choice: dict[int, object] = field(default_factory=dict)


def dp_single_vertex(children: list[ChildContribution]):
    """DP step for a single-vertex block: sum of child round trips, minus
    the best savings when the walk may end inside one child."""
    active = [c for c in children if not c.skipped]
    d_l = sum(c.closed_cost for c in active)
    best = None
    for c in active:
        if best is None or c.saving > best.saving:
            best = c
    if best is not None and best.saving > 0:
        return d_l, d_l - best.saving, best.block
    return d_l, d_l, None


def _arm_positions(t: int, entry: int, removal: int) -> tuple[list[int], list[int]]:
    """Split the cycle (positions mod t) at the removed edge (removal,
    removal+1) into the two arms leaving `entry`."""
    right = []
    p = entry
    while p != removal:
        p = (p + 1) % t
        right.append(p)
    left = []
    p = entry
    while p != (removal + 1) % t:
        p = (p - 1) % t
        left.append(p)
    return right, left


def _arm_depth_options(m: int, req: int) -> range:
    lo = max(req, m - 2, 0)
    return range(lo, m + 1)


def _depths_valid(a: int, m_a: int, b: int, m_b: int) -> bool:
    ok_a = a >= m_a - 1 or b == m_b
    ok_b = b >= m_b - 1 or a == m_a
    return ok_a and ok_b


def _arm_end_options(arm: list[int], depth: int, kids):
    """End-of-walk options on one arm at the given visit depth.

    Yields (saving, (i, child_block)) where i is the depth of the vertex
    the final descent leaves the arm at (i == depth, child None means
    stopping at the tip).
    """
    if depth >= 1:
        yield depth, (depth, None)
    for i in range(1, depth + 1):
        for c in kids[arm[i - 1]]:
            yield i + c.saving, (i, c.block)


def dp_cycle(t: int, weights: list[int], entry: int,
             vertex_children: dict[int, list[ChildContribution]]):
    """DP step for a cycle block entered at position `entry`.

    Candidates: walk the full perimeter, or pick one cycle edge to leave
    unwalked and treat the rest as a chain with two arms (the walk may
    stop one or two vertices short of an arm tip when adjacency still
    covers the rest).  Returns (d_l, d_p, choice records).
    """
    kids = {
        p: [c for c in vertex_children.get(p, []) if not c.skipped]
        for p in range(t)
    }
    required = {
        p: bool(vertex_children.get(p)) for p in range(t)
    }
    s_total = sum(c.closed_cost for cs in kids.values() for c in cs)
    perim = s_total + sum(weights)

    d_l, dl_choice = perim, ("perim",)
    d_p, dp_choice = perim, ("closed",)
    entry_best = None
    for c in kids[entry]:
        if entry_best is None or c.saving > entry_best.saving:
            entry_best = c
    if entry_best is not None and perim - entry_best.saving < d_p:
        d_p = perim - entry_best.saving
        dp_choice = ("perim_child", entry_best.block)

    for j in range(t):
        right, left = _arm_positions(t, entry, j)
        m_r, m_l = len(right), len(left)
        req_r = max((i + 1 for i in range(m_r) if required[right[i]]), default=0)
        req_l = max((i + 1 for i in range(m_l) if required[left[i]]), default=0)
        for a in _arm_depth_options(m_r, req_r):
            for b in _arm_depth_options(m_l, req_l):
                if not _depths_valid(a, m_r, b, m_l):
                    continue
                closed = s_total + 2 * (a + b)
                if closed < d_l:
                    d_l = closed
                    dl_choice = ("chain", j, a, b)
                # one free end: deepest-arm or child-subtree endings
                best_s, best_end = 0, None
                for s, (i, cb) in _arm_end_options(right, a, kids):
                    if s > best_s:
                        best_s, best_end = s, ("armR", i, cb)
                for s, (i, cb) in _arm_end_options(left, b, kids):
                    if s > best_s:
                        best_s, best_end = s, ("armL", i, cb)
                for c in kids[entry]:
                    if c.saving > best_s:
                        best_s, best_end = c.saving, ("entry_child", c.block)
                if closed - best_s < d_p:
                    d_p = closed - best_s
                    dp_choice = ("chain", j, a, b, best_end)
    if d_l <= d_p:
        # the closed walk is no worse, so reuse it (keeps records consistent)
        d_p = d_l
        dp_choice = ("closed",)
    return d_l, d_p, (dl_choice, dp_choice)


class _RootedDp:
    """One full bottom-up evaluation of the block tree for a fixed root."""

    def __init__(self, tvc: WeightedVertexCactus, bt: BlockTree, root: int):
        self.tvc = tvc
        self.bt = bt
        self.root = root
        self.entry: dict[int, int] = {}
        self.children: dict[int, list[ChildContribution]] = {}
        self.tables = DpTables()
        self._evaluate()

    def _evaluate(self) -> None:
        bt = self.bt
        parent = {self.root: -1}
        parent_edge: dict[int, tuple[int, int, int]] = {}
        order = [self.root]
        for b in order:
            for other, w, own, theirs in bt.tree[b]:
                if other not in parent:
                    parent[other] = b
                    parent_edge[other] = (w, own, theirs)
                    order.append(other)
        for b in reversed(order):
            kind, verts = bt.blocks[b]
            kids: list[ChildContribution] = []
            for other, w, own, theirs in bt.tree[b]:
                if parent[other] == b:
                    kids.append(
                        ChildContribution(
                            block=other,
                            entry=theirs,
                            w=w,
                            d_l=self.tables.d_l[other],
                            d_p=self.tables.d_p[other],
                            skipped=self._skippable(other),
                        )
                    )
            kids.sort(key=lambda c: (c.entry, c.block))
            self.children[b] = kids
            if b == self.root:
                continue
            entry_vertex = parent_edge[b][2]
            self.entry[b] = entry_vertex
            if kind == "vertex":
                d_l, d_p, ch = dp_single_vertex(kids)
                self.tables.choice[b] = ("vertex", ch)
            else:
                t = len(verts)
                e_pos = verts.index(entry_vertex)
                weights, per_vertex = self._cycle_view(b, verts)
                d_l, d_p, ch = dp_cycle(t, weights, e_pos, per_vertex)
                self.tables.choice[b] = ("cycle", e_pos, ch)
            self.tables.d_l[b] = d_l
            self.tables.d_p[b] = d_p

    def _skippable(self, b: int) -> bool:
        return self.bt.blocks[b][0] == "vertex" and not self.children[b]

    def _cycle_view(self, b: int, verts):
        t = len(verts)
        wmap = {v: i for i, v in enumerate(verts)}
        weights = []
        for i in range(t):
            a, c = verts[i], verts[(i + 1) % t]
            w = next(wt for nb, wt in self.tvc.adjacency[a] if nb == c)
            weights.append(w)
        per_vertex: dict[int, list[ChildContribution]] = {}
        for c in self.children[b]:
            attach = self._attach_of(b, c.block)
            per_vertex.setdefault(wmap[attach], []).append(c)
        return weights, per_vertex

    def _attach_of(self, b: int, child: int) -> int:
        for other, _w, own, _theirs in self.bt.tree[b]:
            if other == child:
                return own
        raise AssertionError("child edge missing")

    # -- root evaluation ---------------------------------------------------

    def best_root_walk(self):
        """Minimum open-walk weight with both endpoints free, plus a record
        sufficient to reconstruct the walk."""
        kind, verts = self.bt.blocks[self.root]
        if kind == "vertex":
            kids = self.children[self.root]
            active = [c for c in kids if not c.skipped]
            base = sum(c.closed_cost for c in active)
            savings = sorted(
                (c for c in active if c.saving > 0),
                key=lambda c: (-c.saving, c.entry, c.block),
            )[:2]
            ends = [c.block for c in savings] + [None, None]
            value = base - sum(c.saving for c in savings)
            return value, ("vroot", verts[0], ends[0], ends[1])
        return self._best_cycle_root(verts)

    def _best_cycle_root(self, verts):
        t = len(verts)
        weights, per_vertex = self._cycle_view(self.root, verts)
        kids = {
            p: [c for c in per_vertex.get(p, []) if not c.skipped]
            for p in range(t)
        }
        required = {p: bool(per_vertex.get(p)) for p in range(t)}
        s_total = sum(c.closed_cost for cs in kids.values() for c in cs)
        perim = s_total + sum(weights)
        best = None
        pivots = range(t) if self._cycle_needs_all_pivots(required) else [0]
        for p in pivots:
            pivot_opts = [(c.saving, ("pivot_child", c.block)) for c in kids[p]]
            top = sorted(pivot_opts, key=lambda x: -x[0])[:2]
            val = perim - sum(max(0, s) for s, _ in top)
            ends = [e for s, e in top if s > 0] + [None, None]
            cand = (val, ("croot", p, ("perim",), ends[0], ends[1]))
            if best is None or cand[0] < best[0]:
                best = cand
            for j in range(t):
                right, left = _arm_positions(t, p, j)
                m_r, m_l = len(right), len(left)
                req_r = max((i + 1 for i in range(m_r) if required[right[i]]),
                            default=0)
                req_l = max((i + 1 for i in range(m_l) if required[left[i]]),
                            default=0)
                for a in _arm_depth_options(m_r, req_r):
                    for b in _arm_depth_options(m_l, req_l):
                        if not _depths_valid(a, m_r, b, m_l):
                            continue
                        closed = s_total + 2 * (a + b)
                        opts = []
                        sR = max(_arm_end_options(right, a, kids),
                                 key=lambda x: x[0], default=None)
                        if sR is not None:
                            opts.append((sR[0], ("armR",) + sR[1]))
                        sL = max(_arm_end_options(left, b, kids),
                                 key=lambda x: x[0], default=None)
                        if sL is not None:
                            opts.append((sL[0], ("armL",) + sL[1]))
                        opts.extend(pivot_opts)
                        top = sorted(opts, key=lambda x: -x[0])[:2]
                        val = closed - sum(max(0, s) for s, _ in top)
                        ends = [e for s, e in top if s > 0] + [None, None]
                        cand = (val, ("croot", p, ("chain", j, a, b),
                                      ends[0], ends[1]))
                        if cand[0] < best[0]:
                            best = cand
        return best

    def _cycle_needs_all_pivots(self, required) -> bool:
        # a bare uniform cycle looks the same from every pivot
        return any(required.values())

    # -- reconstruction ----------------------------------------------------

    def emit_closed(self, b: int) -> list[int]:
        kind, verts = self.bt.blocks[b]
        if kind == "vertex":
            v = verts[0]
            walk = [v]
            for c in self.children[b]:
                if not c.skipped:
                    walk += self.emit_closed(c.block) + [v]
            return walk
        e_pos, (dl_choice, _) = self.tables.choice[b][1:3]
        return self._emit_cycle_closed(b, verts, e_pos, dl_choice)

    def _exc(self, b: int, pos_kids, p: int, omit=()) -> list[int]:
        walk: list[int] = []
        vtx = self.bt.blocks[b][1][p]
        for c in pos_kids.get(p, []):
            if c.skipped or c.block in omit:
                continue
            walk += self.emit_closed(c.block) + [vtx]
        return walk

    def _pos_kids(self, b: int):
        _, verts = self.bt.blocks[b]
        wmap = {v: i for i, v in enumerate(verts)}
        out: dict[int, list[ChildContribution]] = {}
        for c in self.children[b]:
            out.setdefault(wmap[self._attach_of(b, c.block)], []).append(c)
        return out

    def _emit_cycle_closed(self, b, verts, e_pos, dl_choice) -> list[int]:
        t = len(verts)
        pos_kids = self._pos_kids(b)
        walk = [verts[e_pos]] + self._exc(b, pos_kids, e_pos)
        if dl_choice[0] == "perim":
            p = e_pos
            for _ in range(t - 1):
                p = (p + 1) % t
                walk += [verts[p]] + self._exc(b, pos_kids, p)
            walk.append(verts[e_pos])
            return walk
        _, j, a, bdep = dl_choice
        right, left = _arm_positions(t, e_pos, j)
        walk += self._arm_closed(b, verts, pos_kids, right, a, e_pos)
        walk += self._arm_closed(b, verts, pos_kids, left, bdep, e_pos)
        return walk

    def _arm_closed(self, b, verts, pos_kids, arm, depth, e_pos) -> list[int]:
        walk: list[int] = []
        for i in range(depth):
            p = arm[i]
            walk += [verts[p]] + self._exc(b, pos_kids, p)
        for i in range(depth - 2, -1, -1):
            walk.append(verts[arm[i]])
        if depth:
            walk.append(verts[e_pos])
        return walk

    def _arm_open(self, b, verts, pos_kids, arm, depth, i_end, child) -> list[int]:
        walk: list[int] = []
        for i in range(depth):
            p = arm[i]
            omit = (child,) if child is not None and i == i_end - 1 else ()
            walk += [verts[p]] + self._exc(b, pos_kids, p, omit=omit)
        for i in range(depth - 2, i_end - 2, -1):
            if i >= 0:
                walk.append(verts[arm[i]])
        if child is not None:
            walk += self.emit_open(child)
        return walk

    def emit_open(self, b: int) -> list[int]:
        kind, verts = self.bt.blocks[b]
        if kind == "vertex":
            v = verts[0]
            _, open_child = self.tables.choice[b]
            walk = [v]
            for c in self.children[b]:
                if not c.skipped and c.block != open_child:
                    walk += self.emit_closed(c.block) + [v]
            if open_child is not None:
                walk += self.emit_open(open_child)
            return walk
        e_pos, (dl_choice, dp_choice) = self.tables.choice[b][1:3]
        if dp_choice[0] == "closed":
            return self._emit_cycle_closed(b, verts, e_pos, dl_choice)
        t = len(verts)
        pos_kids = self._pos_kids(b)
        if dp_choice[0] == "perim_child":
            child = dp_choice[1]
            walk = [verts[e_pos]] + self._exc(b, pos_kids, e_pos, omit=(child,))
            p = e_pos
            for _ in range(t - 1):
                p = (p + 1) % t
                walk += [verts[p]] + self._exc(b, pos_kids, p)
            walk.append(verts[e_pos])
            return walk + self.emit_open(child)
        _, j, a, bdep, end = dp_choice
        right, left = _arm_positions(t, e_pos, j)
        omit_entry = (end[1],) if end[0] == "entry_child" else ()
        walk = [verts[e_pos]] + self._exc(b, pos_kids, e_pos, omit=omit_entry)
        if end[0] == "entry_child":
            walk += self._arm_closed(b, verts, pos_kids, right, a, e_pos)
            walk += self._arm_closed(b, verts, pos_kids, left, bdep, e_pos)
            return walk + self.emit_open(end[1])
        if end[0] == "armR":
            walk += self._arm_closed(b, verts, pos_kids, left, bdep, e_pos)
            walk += self._arm_open(b, verts, pos_kids, right, a, end[1], end[2])
        else:
            walk += self._arm_closed(b, verts, pos_kids, right, a, e_pos)
            walk += self._arm_open(b, verts, pos_kids, left, bdep, end[1], end[2])
        return walk

    def emit_root(self, record) -> list[int]:
        if record[0] == "vroot":
            _, v, c1, c2 = record
            middle = [v]
            for c in self.children[self.root]:
                if not c.skipped and c.block not in (c1, c2):
                    middle += self.emit_closed(c.block) + [v]
            pre = list(reversed(self.emit_open(c1))) if c1 is not None else []
            post = self.emit_open(c2) if c2 is not None else []
            return pre + middle + post
        _, p, mode, e1, e2 = record
        verts = self.bt.blocks[self.root][1]
        t = len(verts)
        pos_kids = self._pos_kids(self.root)
        used_children = [e[1] for e in (e1, e2)
                         if e is not None and e[0] == "pivot_child"]
        if mode[0] == "perim":
            middle = [verts[p]] + self._exc(self.root, pos_kids, p,
                                            omit=used_children)
            q = p
            for _ in range(t - 1):
                q = (q + 1) % t
                middle += [verts[q]] + self._exc(self.root, pos_kids, q)
            middle.append(verts[p])
        else:
            _, j, a, bdep = mode
            right, left = _arm_positions(t, p, j)
            arm_spec = {"armR": (right, a), "armL": (left, bdep)}
            open_arms = {e[0]: e for e in (e1, e2)
                         if e is not None and e[0] in arm_spec}
            middle = [verts[p]] + self._exc(self.root, pos_kids, p,
                                            omit=used_children)
            for name in ("armR", "armL"):
                if name not in open_arms:
                    arm, depth = arm_spec[name]
                    middle += self._arm_closed(self.root, verts, pos_kids,
                                               arm, depth, p)
        segments = []
        for e in (e1, e2):
            if e is None:
                segments.append([])
            elif e[0] == "pivot_child":
                segments.append(self.emit_open(e[1]))
            else:
                arm, depth = {"armR": (right, a), "armL": (left, bdep)}[e[0]]
                segments.append(
                    self._arm_open(self.root, verts, pos_kids, arm, depth,
                                   e[1], e[2])
                )
        return list(reversed(segments[0])) + middle + segments[1]


def solve_root_choices(tvc: WeightedVertexCactus, bt: BlockTree):
    """Try every block as the root; return (weight, rooted dp, record)."""
    best = None
    for root in range(bt.n_blocks):
        dp = _RootedDp(tvc, bt, root)
        value, record = dp.best_root_walk()
        if best is None or value < best[0]:
            best = (value, dp, record)
    return best


def _walk_weight(tvc: WeightedVertexCactus, walk: list[int]) -> int:
    total = 0
    for a, b in zip(walk, walk[1:]):
        w = next((wt for nb, wt in tvc.adjacency[a] if nb == b), None)
        if w is None:
            raise AssertionError(f"walk step ({a},{b}) is not an edge of T")
        total += w
    return total


def solve_cactus(g: Graph) -> CoveringPath:
    """Minimum-length 1-covering walk of a connected cactus."""
    decomp = validate_cactus(g)
    if g.n == 1:
        return CoveringPath.from_vertices(g, [0])
    tvc = build_vertex_cactus(g, decomp)
    bt = build_block_tree(tvc)
    if bt.n_blocks == 1 and bt.blocks[0][0] == "cycle":
        verts = bt.blocks[0][1]
        walk = [tvc.origin[v] for v in verts[: len(verts) - 2]]
        path = CoveringPath.from_vertices(g, walk)
        assert path.is_covering(g)
        return path
    value, dp, record = solve_root_choices(tvc, bt)
    t_walk = dp.emit_root(record)
    assert _walk_weight(tvc, t_walk) == value, "reconstructed walk weight drifted"
    g_walk: list[int] = []
    for tv in t_walk:
        ov = tvc.origin[tv]
        if not g_walk or g_walk[-1] != ov:
            g_walk.append(ov)
    path = CoveringPath.from_vertices(g, g_walk)
    assert path.length == value, "collapsed walk length drifted"
    assert path.is_covering(g), "solver produced a non-covering walk"
    return path
