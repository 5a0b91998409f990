"""Weighted digraphs, strongly connected components and zero-mean detection.

Vertices are 0-based inside the library. Error messages and the file format
use 1-based ids; the conversion lives in :mod:`mcmean.io`.
"""
import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

Edge = Tuple[int, int, int]


class GraphError(ValueError):
    """Raised when a vertex count and edge list do not form a valid graph."""


@dataclass(frozen=True)
class Graph:
    """Directed graph with nonnegative integer weights and outdegree >= 1.

    Build instances through :func:`validate_graph`; the constructor does not
    check invariants.
    """

    n: int
    edges: Tuple[Edge, ...]
    max_weight: int
    src: np.ndarray = field(repr=False, compare=False)
    dst: np.ndarray = field(repr=False, compare=False)
    weight: np.ndarray = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def W(self) -> int:
        return self.max_weight

    def successors(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
        return adj

    def predecessors(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[v].append(u)
        return adj


def validate_graph(n: int, edges: Sequence[Sequence[int]]) -> Graph:
    """Check a raw vertex count and 0-based edge list and build a :class:`Graph`."""
    if int(n) != n or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)
    clean = []
    outdeg = [0] * n
    for u, v, w in edges:
        if int(u) != u or int(v) != v or int(w) != w:
            raise GraphError(f"non-integer edge ({u}, {v}, {w})")
        u, v, w = int(u), int(v), int(w)
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphError(f"vertex id {x + 1} out of range [1, {n}]")
        if w < 0:
            raise GraphError(f"negative weight {w} on edge ({u + 1}, {v + 1})")
        outdeg[u] += 1
        clean.append((u, v, w))
    for x, d in enumerate(outdeg):
        if d == 0:
            raise GraphError(f"vertex {x + 1} has no outgoing edge")
    W = max(w for _, _, w in clean)
    arr = np.array(clean, dtype=np.int64).reshape(-1, 3)
    return Graph(
        n=n,
        edges=tuple(clean),
        max_weight=W,
        src=np.ascontiguousarray(arr[:, 0]),
        dst=np.ascontiguousarray(arr[:, 1]),
        weight=np.ascontiguousarray(arr[:, 2]),
    )


@dataclass(frozen=True)
class Condensation:
    """SCC partition plus the DAG obtained by contracting each component.

    ``components`` is sorted by smallest vertex id. ``topo_order`` lists
    component indices so that every condensation edge goes from an earlier
    to a later position.
    """

    components: Tuple[Tuple[int, ...], ...]
    component_of: Tuple[int, ...]
    dag_edges: Tuple[Tuple[int, int], ...]
    topo_order: Tuple[int, ...]


def _tarjan(n, adj):
    """Iterative Tarjan's algorithm; returns a list of vertex lists."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _components(n, edges):
    adj = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
    return _tarjan(n, adj)


def strongly_connected_components(g: Graph) -> Condensation:
    raw_sorted = sorted((sorted(c) for c in _components(g.n, g.edges)), key=lambda c: c[0])
    component_of = [0] * g.n
    for ci, comp in enumerate(raw_sorted):
        for v in comp:
            component_of[v] = ci
    dag = sorted({(component_of[u], component_of[v]) for u, v, _ in g.edges
                  if component_of[u] != component_of[v]})
    # Kahn with a heap keeps the order independent of edge order
    indeg = [0] * len(raw_sorted)
    out = [[] for _ in raw_sorted]
    for a, b in dag:
        indeg[b] += 1
        out[a].append(b)
    ready = [c for c, d in enumerate(indeg) if d == 0]
    heapq.heapify(ready)
    topo = []
    while ready:
        c = heapq.heappop(ready)
        topo.append(c)
        for d in out[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(ready, d)
    return Condensation(
        components=tuple(tuple(c) for c in raw_sorted),
        component_of=tuple(component_of),
        dag_edges=tuple(dag),
        topo_order=tuple(topo),
    )


def can_reach(g: Graph, targets) -> frozenset:
    """All vertices with a path (possibly empty) into ``targets``."""
    pred = g.predecessors()
    seen = set(targets)
    todo = list(seen)
    while todo:
        v = todo.pop()
        for u in pred[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return frozenset(seen)


def zero_mean_vertices(g: Graph) -> frozenset:
    """Vertices x with mu(x) = 0, i.e. that can reach a cycle of zero-weight edges.

    A component of the graph holds a zero-mean cycle iff its zero-weight
    subgraph has a nontrivial SCC or a zero-weight self-loop. The answer is
    everything that can reach such a component.
    """
    cond = strongly_connected_components(g)
    inner_zero = [[] for _ in cond.components]
    for u, v, w in g.edges:
        if w == 0 and cond.component_of[u] == cond.component_of[v]:
            inner_zero[cond.component_of[u]].append((u, v, w))
    Z = set()
    for ci, comp in enumerate(cond.components):
        zedges = inner_zero[ci]
        if not zedges:
            continue
        if any(u == v for u, v, _ in zedges):
            Z.update(comp)
            continue
        local = {v: i for i, v in enumerate(comp)}
        sub = [(local[u], local[v], 0) for u, v, _ in zedges]
        if any(len(c) >= 2 for c in _components(len(comp), sub)):
            Z.update(comp)
    return can_reach(g, Z)


BRUTE_FORCE_MAX_N = 12


@dataclass(frozen=True)
class BruteForceResult:
    per_vertex: Tuple[Fraction, ...]
    global_mean: Fraction


def brute_force_mcm(g: Graph, max_n: int = BRUTE_FORCE_MAX_N) -> BruteForceResult:
    """Exhaustive minimum cycle mean over all simple cycles.

    For every start vertex s, searches all simple paths from s through
    vertices with larger ids, keyed by visited vertex set; closing such a
    path back to s yields every simple cycle whose smallest vertex is s.
    Only the cheapest path per (vertex set, endpoint) matters, because the
    cycle length equals the size of the set. Exponential; testing only.
    """
    if g.n > max_n:
        raise GraphError(f"brute force is limited to n <= {max_n}, got n = {g.n}")
    n = g.n
    cheapest = {}
    for u, v, w in g.edges:
        if (u, v) not in cheapest or w < cheapest[(u, v)]:
            cheapest[(u, v)] = w
    out = [[] for _ in range(n)]
    for (u, v), w in cheapest.items():
        out[u].append((v, w))

    best_at = [None] * n  # cheapest cycle mean through each vertex
    for s in range(n):
        frontier = {(1 << s, s): 0}
        while frontier:
            nxt = {}
            for (mask, v), cost in frontier.items():
                for y, w in out[v]:
                    if y == s:
                        mean = Fraction(cost + w, bin(mask).count("1"))
                        for x in range(s, n):
                            if mask >> x & 1 and (best_at[x] is None or mean < best_at[x]):
                                best_at[x] = mean
                    elif y > s and not mask >> y & 1:
                        key = (mask | 1 << y, y)
                        c = cost + w
                        if key not in nxt or c < nxt[key]:
                            nxt[key] = c
            frontier = nxt

    succ = g.successors()
    per_vertex = []
    for x in range(n):
        seen = {x}
        todo = [x]
        while todo:
            v = todo.pop()
            for y in succ[v]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        per_vertex.append(min(best_at[y] for y in seen if best_at[y] is not None))
    return BruteForceResult(tuple(per_vertex), min(per_vertex))
