"""Device connectivity graphs and their cactus decompositions.

Contains:
    - Graph: immutable undirected simple graph with sorted adjacency.
    - validate_cactus(): connectivity + cactus check, returns the cycle
      decomposition (every edge on at most one simple cycle).
    - prune_leaves(): iteratively strip degree-1 vertices.
    - build_vertex_cactus(): split vertices shared by several cycles so that
      every vertex lies on at most one cycle; copies of the same vertex are
      linked by weight-0 edges, original edges keep weight 1.
    - build_block_tree(): blocks (cycles and cycle-free vertices) of the
      vertex cactus arranged as a tree whose edges are the bridges.
    - random_cactus(): seeded generator used by tests and the CLI.
    - JSON (de)serialisation of graphs.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field


class GraphError(Exception):
    """Base class for graph-structure errors."""


class NotConnected(GraphError):
    """The input graph is not connected."""


class NotACactus(GraphError):
    """Some edge of the input graph lies on two simple cycles."""


class GraphFormatError(ValueError):
    """Malformed graph JSON."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with sorted adjacency."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 1:
            raise GraphFormatError("vertex count must be >= 1")
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphFormatError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        return Graph(n, tuple(tuple(sorted(s)) for s in adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def induced_subgraph(self, vertices) -> tuple["Graph", list[int]]:
        """Induced subgraph on `vertices`; returns (subgraph, old-label list).

        Position i of the returned list is the original label of subgraph
        vertex i.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u, v in self.edges()
            if u in index and v in index
        ]
        return Graph.from_edges(len(keep), edges), keep


@dataclass(frozen=True)
class CycleDecomposition:
    """Simple cycles of a cactus, indexed in DFS-discovery order from 0.

    Each cycle is listed starting from its DFS-first vertex and following
    the DFS tree path.  `membership[v]` lists (in discovery order) the
    cycles through v; `cycle_of_edge` maps a sorted edge pair to its cycle
    index (bridges are absent from the map).
    """

    cycles: tuple[tuple[int, ...], ...]
    membership: tuple[tuple[int, ...], ...]
    cycle_of_edge: dict = field(compare=False)


def validate_cactus(g: Graph) -> CycleDecomposition:
    """Check that g is a connected cactus; return its cycle decomposition.

    Raises NotConnected or NotACactus (naming an edge on two cycles).
    """
    n = g.n
    parent = [-1] * n
    disc = [-1] * n
    order: list[int] = []
    # Iterative DFS from vertex 0 with per-vertex neighbor cursors, so the
    # traversal order is reproducible (sorted adjacency).
    stack = [0]
    disc[0] = 0
    it = [iter(g.adjacency[v]) for v in range(n)]
    cycles: list[tuple[int, ...]] = []
    edge_cycle: dict[tuple[int, int], int] = {}
    seen_back: set[tuple[int, int]] = set()
    while stack:
        v = stack[-1]
        advanced = False
        for u in it[v]:
            if disc[u] == -1:
                disc[u] = len(order) + 1
                order.append(u)
                parent[u] = v
                stack.append(u)
                advanced = True
                break
            if u != parent[v] and disc[u] < disc[v]:
                key = (min(u, v), max(u, v))
                if key in seen_back:
                    continue
                seen_back.add(key)
                # Back edge closes the cycle u -> ... -> v along tree edges.
                cyc = [v]
                w = v
                while w != u:
                    w = parent[w]
                    cyc.append(w)
                cyc.reverse()  # starts at u, the DFS-first vertex
                idx = len(cycles)
                for a, b in zip(cyc, cyc[1:] + [cyc[0]]):
                    ekey = (min(a, b), max(a, b))
                    if ekey in edge_cycle:
                        raise NotACactus(f"edge {ekey} lies on two cycles")
                    edge_cycle[ekey] = idx
                cycles.append(tuple(cyc))
        if not advanced:
            stack.pop()
    if len(order) + 1 != n:
        missing = next(v for v in range(n) if disc[v] == -1)
        raise NotConnected(f"vertex {missing} unreachable from 0")
    membership: list[list[int]] = [[] for _ in range(n)]
    for idx, cyc in enumerate(cycles):
        for v in cyc:
            membership[v].append(idx)
    return CycleDecomposition(
        cycles=tuple(cycles),
        membership=tuple(tuple(m) for m in membership),
        cycle_of_edge=edge_cycle,
    )


def prune_leaves(g: Graph) -> tuple[Graph, set[int]]:
    """Repeatedly remove degree-1 vertices (stopping at a single vertex).

    The returned graph keeps the original vertex labels; pruned vertices
    become isolated.  Also returns the set of pruned vertices.
    """
    degree = [g.degree(v) for v in range(g.n)]
    alive = [True] * g.n
    remaining = g.n
    queue = deque(v for v in range(g.n) if degree[v] == 1)
    pruned: set[int] = set()
    while queue and remaining > 1:
        v = queue.popleft()
        if not alive[v] or degree[v] != 1:
            continue
        alive[v] = False
        pruned.add(v)
        remaining -= 1
        for u in g.adjacency[v]:
            if alive[u]:
                degree[u] -= 1
                if degree[u] == 1:
                    queue.append(u)
    edges = [(u, v) for u, v in g.edges() if alive[u] and alive[v]]
    return Graph.from_edges(g.n, edges), pruned


@dataclass(frozen=True)
class WeightedVertexCactus:
    """Vertex cactus obtained by splitting multi-cycle vertices.

    Vertex ids 0..n-1 are kept for original vertices (acting as the hub
    copy of a split vertex); extra copies get fresh ids n, n+1, ...
    `origin[t]` is the original vertex a copy stands for.  `adjacency[t]`
    is a sorted tuple of (neighbor, weight) pairs with weight 0 for
    hub-copy links and 1 for original edges.  `cycles[c]` lists the copy
    ids forming cycle c (same indexing as the input decomposition).
    """

    n: int
    adjacency: tuple[tuple[tuple[int, int], ...], ...]
    origin: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def neighbors(self, t: int) -> tuple[tuple[int, int], ...]:
        return self.adjacency[t]


def build_vertex_cactus(g: Graph, d: CycleDecomposition) -> WeightedVertexCactus:
    """Split every vertex on >= 2 cycles into one copy per cycle.

    The hub copy keeps the original id and stays on the first cycle of the
    vertex's membership list; copy i sits on the i-th cycle.  Weight-0
    edges join the hub to every extra copy.  Bridge edges of a split
    vertex attach to its hub.
    """
    origin: list[int] = list(range(g.n))
    copy_id: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        cycs = d.membership[v]
        if cycs:
            copy_id[(v, cycs[0])] = v
        for c in cycs[1:]:
            copy_id[(v, c)] = len(origin)
            origin.append(v)
    nn = len(origin)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nn)]

    def add(a: int, b: int, w: int) -> None:
        adj[a].append((b, w))
        adj[b].append((a, w))

    for v in range(g.n):
        for c in d.membership[v][1:]:
            add(v, copy_id[(v, c)], 0)
    for u, v in g.edges():
        c = d.cycle_of_edge.get((u, v))
        if c is None:
            add(u, v, 1)  # bridge: hubs keep their original ids
        else:
            add(copy_id.get((u, c), u), copy_id.get((v, c), v), 1)
    t_cycles = tuple(
        tuple(copy_id.get((v, ci), v) for v in cyc)
        for ci, cyc in enumerate(d.cycles)
    )
    return WeightedVertexCactus(
        n=nn,
        adjacency=tuple(tuple(sorted(a)) for a in adj),
        origin=tuple(origin),
        cycles=t_cycles,
    )


@dataclass(frozen=True)
class BlockTree:
    """Blocks of a vertex cactus (cycles and cycle-free vertices) as a tree.

    `blocks[b]` is either ("cycle", vertex tuple) or ("vertex", (v,)).
    `tree[b]` lists (other_block, weight, own_attach, other_attach) for
    every bridge incident to block b, where the attach entries are the
    vertex-cactus endpoints of the bridge inside each block.
    """

    blocks: tuple[tuple[str, tuple[int, ...]], ...]
    tree: tuple[tuple[tuple[int, int, int, int], ...], ...]
    block_of: tuple[int, ...]
    root: int = 0

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


def build_block_tree(t: WeightedVertexCactus) -> BlockTree:
    """Group the vertex cactus into cycle blocks and single-vertex blocks.

    Bridges (every edge not inside a cycle, including all weight-0 edges)
    become the tree edges.
    """
    block_of = [-1] * t.n
    blocks: list[tuple[str, tuple[int, ...]]] = []
    for cyc in t.cycles:
        for v in cyc:
            block_of[v] = len(blocks)
        blocks.append(("cycle", cyc))
    for v in range(t.n):
        if block_of[v] == -1:
            block_of[v] = len(blocks)
            blocks.append(("vertex", (v,)))
    cycle_edges: set[tuple[int, int]] = set()
    for cyc in t.cycles:
        for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
            cycle_edges.add((min(a, b), max(a, b)))
    tree: list[list[tuple[int, int, int, int]]] = [[] for _ in blocks]
    for a in range(t.n):
        for b, w in t.adjacency[a]:
            if a < b and (a, b) not in cycle_edges:
                ba, bb = block_of[a], block_of[b]
                tree[ba].append((bb, w, a, b))
                tree[bb].append((ba, w, b, a))
    return BlockTree(
        blocks=tuple(blocks),
        tree=tuple(tuple(sorted(es)) for es in tree),
        block_of=tuple(block_of),
    )


def random_cactus(n: int, seed: int, cycle_prob: float = 0.45) -> Graph:
    """Seeded random connected cactus on exactly n vertices.

    Grows from a single vertex; each step either hangs a pendant vertex on
    a random existing vertex or threads a new cycle (size 3-6) through
    one, so cycles may share single vertices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    count = 1
    while count < n:
        a = rng.randrange(count)
        room = n - count
        if room >= 2 and rng.random() < cycle_prob:
            size = rng.randint(3, min(6, room + 1))
            ring = [a] + list(range(count, count + size - 1))
            count += size - 1
            edges.extend((ring[i], ring[i + 1]) for i in range(size - 1))
            edges.append((ring[-1], ring[0]))
        else:
            edges.append((a, count))
            count += 1
    return Graph.from_edges(n, edges)


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def graph_from_json_dict(data) -> Graph:
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    if set(data) != {"n", "edges"}:
        raise GraphFormatError('graph JSON must have exactly "n" and "edges"')
    if not isinstance(data["n"], int) or isinstance(data["n"], bool):
        raise GraphFormatError('"n" must be an integer')
    if not isinstance(data["edges"], list):
        raise GraphFormatError('"edges" must be a list')
    for e in data["edges"]:
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise GraphFormatError(f"bad edge entry: {e!r}")
    return Graph.from_edges(data["n"], data["edges"])


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return graph_from_json_dict(data)


def dump_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(graph_to_json_dict(g), sort_keys=True))
        fh.write("\n")
