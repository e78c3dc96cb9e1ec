"""Small multigraph utilities: blocks, path-bundle recognition, K4/e minors.

A multigraph is a vertex count plus an edge list; loops and parallel edges
are allowed and edges are labeled by their list index. The shape checks here
back the structural characterization of graphic matroids with no K4/e minor:
every block is a bridge, a circuit, or a subdivision of a two-vertex bundle
of t parallel edges.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BadIndex, BudgetExceeded, ParseError

MAX_MINOR_EDGES = 14


@dataclass(frozen=True)
class MultiGraph:
    """Vertices 0..n_vertices-1 with labeled edges; loops and parallels allowed."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise BadIndex("vertex count must be nonnegative")
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise BadIndex(f"edge ({u}, {v}) out of range")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(norm))

    def degrees(self) -> list[int]:
        """Degree per vertex; a loop contributes 2 to its endpoint."""
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (edge label, other endpoint)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for e, (u, v) in enumerate(self.edges):
            adj[u].append((e, v))
            if u != v:
                adj[v].append((e, u))
        return adj


def blocks(g: MultiGraph) -> list[frozenset[int]]:
    """Partition of the edge labels into 2-connected blocks.

    Bridges come out as singleton blocks and each loop is its own block;
    parallel edges share a block (they form a 2-edge cycle).
    """
    adj = g.adjacency()
    disc = [-1] * g.n_vertices
    low = [0] * g.n_vertices
    out: list[frozenset[int]] = []
    stack: list[int] = []
    counter = itertools.count()

    def dfs(root: int) -> None:
        # iterative DFS so deep paths cannot overflow the recursion limit
        work = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = next(counter)
        while work:
            u, parent_edge, it = work[-1]
            advanced = False
            for e, v in it:
                if e == parent_edge:
                    continue
                if v == u:
                    out.append(frozenset({e}))
                    continue
                if disc[v] == -1:
                    stack.append(e)
                    disc[v] = low[v] = next(counter)
                    work.append((v, e, iter(adj[v])))
                    advanced = True
                    break
                if disc[v] < disc[u]:
                    stack.append(e)
                    low[u] = min(low[u], disc[v])
            if advanced:
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    block = set()
                    while True:
                        e = stack.pop()
                        block.add(e)
                        if e == parent_edge:
                            break
                    out.append(frozenset(block))

    for r in range(g.n_vertices):
        if disc[r] == -1:
            dfs(r)
    return out


def is_subdivision_of_At(g: MultiGraph) -> Optional[int]:
    """The t >= 3 when g is t internally disjoint paths between two hubs.

    Suppress degree-2 vertices mentally: the graph qualifies exactly when two
    vertices u, w have equal degree t >= 3 and every edge lies on one of t
    edge-disjoint u-w paths whose internal vertices all have degree 2. Loops
    disqualify; plain cycles (no hub at all) report None.
    """
    if not g.edges or any(u == v for u, v in g.edges):
        return None
    deg = g.degrees()
    hubs = [v for v in range(g.n_vertices) if deg[v] not in (0, 2)]
    if len(hubs) != 2:
        return None
    u, w = hubs
    t = deg[u]
    if t != deg[w] or t < 3:
        return None
    adj = g.adjacency()
    used = [False] * len(g.edges)
    paths = 0
    for e0, v0 in adj[u]:
        if used[e0]:
            continue
        used[e0] = True
        cur, prev_edge = v0, e0
        while cur != w:
            if cur == u:
                return None  # walked back into the start hub: a cycle at u
            nxt = [(e, x) for e, x in adj[cur] if e != prev_edge and not used[e]]
            if len(nxt) != 1:
                return None
            prev_edge, cur = nxt[0][0], nxt[0][1]
            used[prev_edge] = True
        paths += 1
    if paths != t or not all(used):
        return None
    return t


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _cyclomatic(g: MultiGraph) -> int:
    uf = _UnionFind(g.n_vertices)
    active = set()
    for u, v in g.edges:
        uf.union(u, v)
        active.add(u)
        active.add(v)
    roots = {uf.find(v) for v in active}
    return len(g.edges) - (len(active) - len(roots))


def has_K4e_graph_minor(g: MultiGraph) -> bool:
    """Exhaustive edge delete/contract search for a K4/e minor.

    K4/e is the 3-vertex multigraph with pair multiplicities 1, 2, 2 (a
    triangle with two doubled sides). The sweep keeps every 5-edge subset and
    splits the rest into deletions and contractions; capped at 14 edges.
    """
    m = len(g.edges)
    if m > MAX_MINOR_EDGES:
        raise BudgetExceeded(f"{m} edges exceeds the {MAX_MINOR_EDGES}-edge search cap")
    if m < 5 or _cyclomatic(g) < 3:
        return False
    for keep in itertools.combinations(range(m), 5):
        keep_set = set(keep)
        rest = [e for e in range(m) if e not in keep_set]
        for flags in itertools.product((False, True), repeat=len(rest)):
            uf = _UnionFind(g.n_vertices)
            for e, contracted in zip(rest, flags):
                if contracted:
                    uf.union(*g.edges[e])
            counts: dict[tuple[int, int], int] = {}
            vertices = set()
            ok = True
            for e in keep:
                a, b = uf.find(g.edges[e][0]), uf.find(g.edges[e][1])
                if a == b:
                    ok = False  # kept edge became a loop
                    break
                pair = (a, b) if a <= b else (b, a)
                counts[pair] = counts.get(pair, 0) + 1
                vertices.add(a)
                vertices.add(b)
            if ok and len(vertices) == 3 and sorted(counts.values()) == [1, 2, 2]:
                return True
    return False


def _is_connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    uf = _UnionFind(n)
    for u, v in edges:
        uf.union(u, v)
    return len({uf.find(v) for v in range(n)}) <= 1


def _refined_signatures(n: int, edges: tuple[tuple[int, int], ...]) -> list:
    loops = [0] * n
    neigh: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            loops[u] += 1
        else:
            neigh[u].append(v)
            neigh[v].append(u)
    sig = [(loops[v], len(neigh[v])) for v in range(n)]
    for _ in range(2):
        sig = [
            (sig[v], tuple(sorted(sig[x] for x in neigh[v]))) for v in range(n)
        ]
    return sig


def _canonical_edges(
    n: int, edges: tuple[tuple[int, int], ...]
) -> tuple[tuple[int, int], ...]:
    """Lexicographically least relabeling among signature-preserving ones."""
    sig = _refined_signatures(n, edges)
    classes: dict = {}
    for v in range(n):
        classes.setdefault(sig[v], []).append(v)
    ordered = [classes[s] for s in sorted(classes, key=repr)]
    best = None
    for perm_parts in itertools.product(
        *(itertools.permutations(c) for c in ordered)
    ):
        label = {}
        nxt = 0
        for part in perm_parts:
            for v in part:
                label[v] = nxt
                nxt += 1
        cand = tuple(
            sorted(
                (label[u], label[v]) if label[u] <= label[v] else (label[v], label[u])
                for u, v in edges
            )
        )
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def _canonical_spanning_trees(n: int) -> list[tuple[tuple[int, int], ...]]:
    if n == 1:
        return [()]
    pair_types = [(u, v) for u in range(n) for v in range(u + 1, n)]
    reps = set()
    for combo in itertools.combinations(pair_types, n - 1):
        if _is_connected(n, combo):
            reps.add(_canonical_edges(n, combo))
    return sorted(reps)


def enumerate_connected_multigraphs(
    max_vertices: int, max_edges: int
) -> list[MultiGraph]:
    """All connected multigraphs up to isomorphism within the given bounds.

    Loops and parallel edges included; one canonical representative per class.
    Every connected multigraph is a spanning tree plus extra edges, so the
    sweep grows each canonical tree by all extra-edge multisets — far fewer
    candidates than enumerating raw edge multisets.
    """
    out: list[MultiGraph] = []
    seen: set[tuple[int, tuple[tuple[int, int], ...]]] = set()
    for n in range(1, max_vertices + 1):
        if n - 1 > max_edges:
            break
        all_types = [(u, v) for u in range(n) for v in range(u, n)]
        for tree in _canonical_spanning_trees(n):
            for k in range(max_edges - (n - 1) + 1):
                for extra in itertools.combinations_with_replacement(all_types, k):
                    combo = tuple(sorted(tree + extra))
                    canon = _canonical_edges(n, combo)
                    key = (n, canon)
                    if key not in seen:
                        seen.add(key)
                        out.append(MultiGraph(n, canon))
    return out


def format_graph(g: MultiGraph) -> str:
    """Edge-list text: one `u v` line per edge."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_graph(text: str) -> MultiGraph:
    """Parse an edge list (`u v` per line); vertex count is 1 + max endpoint."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two endpoints, got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer endpoint in {line!r}") from exc
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative endpoint in {line!r}")
        edges.append((u, v))
    n = 1 + max((max(u, v) for u, v in edges), default=-1)
    return MultiGraph(n, tuple(edges))
