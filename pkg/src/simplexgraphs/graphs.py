"""Deterministic graph predicates over threshold graphs.

Connectivity and component structure run on a union-find partition; diameter
does a BFS from every vertex over a bit-packed dense adjacency (cheap at the
n <= ~5000 scale the experiments use); the perfect-matching check works across
the fixed vertex split [0, n/2) vs [n/2, n) with augmenting paths; the
Hamilton-cycle decision is exact backtracking with pruning, capped at n=24.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .model import ThresholdGraph, WeightVector


@dataclass(frozen=True)
class ComponentSummary:
    """Component census: count, sizes (descending), and a tree flag per component."""

    kappa: int
    sizes: tuple[int, ...]
    is_tree: tuple[bool, ...]
    n: int

    @property
    def largest_fraction(self) -> float:
        return self.sizes[0] / self.n

    def size_counts(self) -> dict[int, int]:
        """kappa_k: number of components with exactly k vertices."""
        out: dict[int, int] = {}
        for s in self.sizes:
            out[s] = out.get(s, 0) + 1
        return out

    def tree_counts(self) -> dict[int, int]:
        """tau_k: number of tree components with exactly k vertices."""
        out: dict[int, int] = {}
        for s, t in zip(self.sizes, self.is_tree):
            if t:
                out[s] = out.get(s, 0) + 1
        return out


def _component_labels(g: ThresholdGraph) -> np.ndarray:
    parent = list(range(g.n))
    size = [1] * g.n

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for t, h in zip(g.tails.tolist(), g.heads.tolist()):
        ra, rb = find(t), find(h)
        if ra != rb:
            if size[ra] < size[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            size[ra] += size[rb]

    labels = np.empty(g.n, dtype=np.int64)
    next_label = 0
    seen: dict[int, int] = {}
    for v in range(g.n):
        r = find(v)
        if r not in seen:
            seen[r] = next_label
            next_label += 1
        labels[v] = seen[r]
    return labels


def components(g: ThresholdGraph) -> ComponentSummary:
    labels = _component_labels(g)
    k = int(labels.max()) + 1 if g.n else 0
    sizes = np.bincount(labels, minlength=k)
    edge_counts = np.bincount(labels[g.tails], minlength=k)
    is_tree = edge_counts == sizes - 1
    order = np.lexsort((np.arange(k), -sizes))
    return ComponentSummary(
        kappa=k,
        sizes=tuple(int(s) for s in sizes[order]),
        is_tree=tuple(bool(t) for t in is_tree[order]),
        n=g.n,
    )


def is_connected(g: ThresholdGraph) -> bool:
    if g.edge_count < g.n - 1:
        return False
    labels = _component_labels(g)
    return bool((labels == 0).all())


def diameter(g: ThresholdGraph) -> int | float:
    """Longest shortest path; math.inf when disconnected."""
    n = g.n
    bits = g.packed_adjacency()
    ecc_max = 0
    for v in range(n):
        visited = bits[v].copy()
        visited[v >> 3] |= np.uint8(0x80) >> (v & 7)
        frontier = np.flatnonzero(np.unpackbits(bits[v], count=n))
        if frontier.size == 0:
            return math.inf
        dist = 1
        while True:
            nxt = np.bitwise_or.reduce(bits[frontier], axis=0) & ~visited
            if not nxt.any():
                break
            visited |= nxt
            frontier = np.flatnonzero(np.unpackbits(nxt, count=n))
            dist += 1
        if np.unpackbits(visited, count=n).sum() != n:
            return math.inf
        ecc_max = max(ecc_max, dist)
    return ecc_max


def bipartite_perfect_matching(g: ThresholdGraph) -> bool:
    """Perfect matching across the fixed split [0, n/2) vs [n/2, n)?

    Only edges crossing the split participate.  Hopcroft-Karp style phases of
    BFS distances plus DFS augmentation.
    """
    if g.n % 2:
        raise ValueError(f"perfect matching needs an even vertex count, got n={g.n}")
    half = g.n // 2
    adj: list[list[int]] = [[] for _ in range(half)]
    for t, h in zip(g.tails.tolist(), g.heads.tolist()):
        if t < half <= h:
            adj[t].append(h - half)
        elif h < half <= t:
            adj[h].append(t - half)

    INF = float("inf")
    match_u = [-1] * half
    match_v = [-1] * half

    def bfs():
        dist = [INF] * half
        q = deque()
        for u in range(half):
            if match_u[u] == -1:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_v[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found, dist

    def dfs(u: int, dist) -> bool:
        for v in adj[u]:
            w = match_v[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w, dist)):
                match_u[u] = v
                match_v[v] = u
                return True
        dist[u] = INF
        return False

    matched = 0
    while True:
        found, dist = bfs()
        if not found:
            break
        for u in range(half):
            if match_u[u] == -1 and dfs(u, dist):
                matched += 1
    return matched == half


def _articulation_free(adj_mask: list[int], n: int) -> bool:
    disc = [-1] * n
    low = [0] * n
    timer = 0

    def neighbors(v: int):
        m = adj_mask[v]
        while m:
            b = m & -m
            yield b.bit_length() - 1
            m ^= b

    # iterative Tarjan articulation-point scan from vertex 0 (graph already connected)
    stack = [(0, -1, neighbors(0))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                stack.append((w, v, neighbors(w)))
                advanced = True
                break
            elif w != parent:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if pv != 0 and low[v] >= disc[pv]:
                    return False
    return root_children <= 1


def is_hamiltonian(g: ThresholdGraph) -> bool:
    """Exact Hamilton-cycle decision by pruned backtracking; capped at n=24."""
    n = g.n
    if n > 24:
        raise CapacityError(f"exact Hamiltonicity search capped at n=24, got n={n}")
    if n < 3:
        return False
    adj_mask = [0] * n
    for t, h in zip(g.tails.tolist(), g.heads.tolist()):
        adj_mask[t] |= 1 << h
        adj_mask[h] |= 1 << t
    if min(m.bit_count() for m in adj_mask) < 2:
        return False
    if not is_connected(g):
        return False
    if not _articulation_free(adj_mask, n):
        return False

    full = (1 << n) - 1
    start_bit = 1

    def reachable(src_bit: int, allowed: int) -> int:
        seen = src_bit
        frontier = src_bit
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= adj_mask[b.bit_length() - 1]
                m ^= b
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def extend(cur: int, visited: int) -> bool:
        if visited == full:
            return bool(adj_mask[cur] & start_bit)
        remaining = full & ~visited
        cand = adj_mask[cur] & remaining
        if not cand:
            return False
        if not (adj_mask[0] & remaining):
            return False
        # every remaining vertex still needs two usable incident edges
        probe = remaining
        avail = remaining | (1 << cur) | start_bit
        while probe:
            b = probe & -probe
            if (adj_mask[b.bit_length() - 1] & avail).bit_count() < 2:
                return False
            probe ^= b
        # all remaining vertices must be reachable from the path head
        if reachable(1 << cur, remaining) & remaining != remaining:
            return False
        m = cand
        while m:
            b = m & -m
            w = b.bit_length() - 1
            if extend(w, visited | b):
                return True
            m ^= b
        return False

    return extend(0, start_bit)


class _UnionFind:
    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def mst_weight(x: WeightVector) -> tuple[float, list[tuple[int, int]]]:
    """Minimum spanning tree of the complete weighted graph, by Kruskal.

    Edges are taken in increasing weight order with ties broken by coordinate
    index (ties have measure zero under every sampler, but the rule keeps the
    output deterministic).  Returns (total weight, list of n-1 tree edges).
    """
    space = x.space
    if space.directed:
        raise ValueError("spanning trees are defined on undirected weight vectors")
    n = space.n
    order = np.argsort(x.x, kind="stable")
    uf = _UnionFind(n)
    tree: list[tuple[int, int]] = []
    total = 0.0
    for e in order.tolist():
        i, j = space.pair(e)
        if uf.union(i, j):
            tree.append((i, j))
            total += float(x.x[e])
            if len(tree) == n - 1:
                break
    return total, tree
