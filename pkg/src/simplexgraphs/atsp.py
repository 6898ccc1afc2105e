"""Assignment-plus-patching heuristic for the asymmetric TSP, with exact oracles.

The heuristic solves the assignment relaxation (minimum-cost perfect matching
in the bipartite view, O(n^3) potentials method), decomposes the optimal
permutation into cycles, then repeatedly patches the smallest remaining cycle
into the main one: remove one edge (a,b) from the accumulator and one edge
(c,d) from the cycle being absorbed, add (a,d) and (c,b), scanning every edge
pair for the cheapest added cost X[a,d] + X[c,b].  Each patch cuts the cycle
count by one, so the procedure ends with a tour; the assignment cost is a
certified lower bound on any tour.

``held_karp`` provides the exact optimum by bitmask dynamic programming for
n <= 13, used to measure tour quality at desk scale.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .model import EdgeSpace, SimplexModel
from .samplers import SeededRng, sample_simplex


class CostMatrix:
    """Non-negative directed costs X[i, j] for i != j; the diagonal is +inf."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: np.ndarray):
        m = np.array(matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 2:
            raise ValueError("cost matrix must be square with n >= 2")
        if not np.all(np.isinf(np.diag(m))):
            raise ValueError("diagonal entries must be +inf (no self-loops)")
        off = m[~np.eye(m.shape[0], dtype=bool)]
        if not np.all(np.isfinite(off)) or off.min() < 0:
            raise ValueError("off-diagonal costs must be finite and non-negative")
        m.flags.writeable = False
        self.matrix = m

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def finite_sentinel(self) -> np.ndarray:
        """Copy with the diagonal replaced by a finite value no assignment can pick."""
        m = self.matrix.copy()
        off_max = m[~np.eye(self.n, dtype=bool)].max()
        np.fill_diagonal(m, (off_max + 1.0) * (self.n + 1))
        return m

    def write_csv(self, path_or_buf) -> None:
        buf = path_or_buf if hasattr(path_or_buf, "write") else open(path_or_buf, "w")
        try:
            buf.write(f"n={self.n}\n")
            for row in self.matrix:
                buf.write(",".join("inf" if math.isinf(v) else format(v, ".17g") for v in row))
                buf.write("\n")
        finally:
            if buf is not path_or_buf:
                buf.close()

    @classmethod
    def read_csv(cls, path_or_buf) -> "CostMatrix":
        buf = path_or_buf if hasattr(path_or_buf, "read") else open(path_or_buf)
        try:
            header = buf.readline().strip()
            if not header.startswith("n="):
                raise ValueError(f"expected header 'n=<int>', got {header!r}")
            n = int(header[2:])
            rows = []
            for _ in range(n):
                line = buf.readline()
                rows.append([float(tok) for tok in line.strip().split(",")])
            return cls(np.asarray(rows))
        finally:
            if buf is not path_or_buf:
                buf.close()

    def to_csv_text(self) -> str:
        s = io.StringIO()
        self.write_csv(s)
        return s.getvalue()


@dataclass(frozen=True)
class AssignmentResult:
    """Optimal assignment permutation, its cost, and its cycles (longest first)."""

    assignment: np.ndarray
    cost: float
    cycles: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Tour:
    """A single directed cycle visiting every vertex exactly once."""

    order: tuple[int, ...]
    cost: float

    def validate(self, costs: CostMatrix) -> None:
        n = costs.n
        if len(self.order) != n or set(self.order) != set(range(n)):
            raise ValueError("tour must visit every vertex exactly once")
        recomputed = tour_cost(self.order, costs)
        if not math.isclose(recomputed, self.cost, rel_tol=1e-9, abs_tol=1e-9):
            raise ValueError(f"stored cost {self.cost} disagrees with recomputation {recomputed}")


def tour_cost(order, costs: CostMatrix) -> float:
    seq = np.asarray(order)
    return float(costs.matrix[seq, np.roll(seq, -1)].sum())


def _cycles_of(perm: np.ndarray) -> tuple[tuple[int, ...], ...]:
    n = perm.size
    seen = np.zeros(n, dtype=bool)
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        c = [start]
        seen[start] = True
        v = int(perm[start])
        while v != start:
            c.append(v)
            seen[v] = True
            v = int(perm[v])
        cycles.append(tuple(c))
    cycles.sort(key=lambda c: (-len(c), c[0]))
    return tuple(cycles)


def hungarian(costs: CostMatrix) -> AssignmentResult:
    """Minimum-cost assignment by the O(n^3) potentials method.

    Row potentials u, column potentials v, and shortest augmenting paths in
    the reduced costs; the inner column scan is vectorized.  The permutation
    never touches the diagonal (the sentinel exceeds any derangement's cost),
    and its cost is a lower bound on every tour.
    """
    X = costs.finite_sentinel()
    n = costs.n
    INF = np.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    col_row = np.zeros(n + 1, dtype=np.int64)  # col_row[j] = row matched to column j; 0 = free
    way = np.zeros(n + 1, dtype=np.int64)

    for i in range(1, n + 1):
        col_row[0] = i
        j0 = 0
        minv = np.full(n + 1, INF)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = col_row[j0]
            cur = X[i0 - 1, :] - u[i0] - v[1:]
            better = (~used[1:]) & (cur < minv[1:])
            if better.any():
                minv[1:][better] = cur[better]
                way[1:][better] = j0
            masked = np.where(used[1:], INF, minv[1:])
            j1 = int(np.argmin(masked)) + 1
            delta = masked[j1 - 1]
            used_idx = np.flatnonzero(used)
            u[col_row[used_idx]] += delta
            v[used_idx] -= delta
            minv[1:][~used[1:]] -= delta
            j0 = j1
            if col_row[j0] == 0:
                break
        while j0:
            j1 = int(way[j0])
            col_row[j0] = col_row[j1]
            j0 = j1

    perm = np.empty(n, dtype=np.int64)
    perm[col_row[1:] - 1] = np.arange(n)
    if (perm == np.arange(n)).any():
        raise RuntimeError("assignment selected a diagonal entry; sentinel too small")
    cost = float(costs.matrix[np.arange(n), perm].sum())
    return AssignmentResult(assignment=perm, cost=cost, cycles=_cycles_of(perm))


def patch(assignment: AssignmentResult, costs: CostMatrix) -> Tour:
    """Merge the assignment's cycles into a tour, smallest cycle first.

    The first (longest) cycle is the fixed accumulator.  For each merge the
    full |C_1| x |C_i| grid of removal pairs is scanned for the minimum added
    cost X[a,d] + X[c,b].
    """
    X = costs.matrix
    cycles = [list(c) for c in assignment.cycles]
    acc = cycles[0]
    for cyc in reversed(cycles[1:]):
        a = np.asarray(acc)
        b = np.roll(a, -1)
        c = np.asarray(cyc)
        d = np.roll(c, -1)
        added = X[a[:, None], d[None, :]] + X[c[None, :], b[:, None]]
        s, t = np.unravel_index(np.argmin(added), added.shape)
        acc = acc[: s + 1] + cyc[t + 1 :] + cyc[: t + 1] + acc[s + 1 :]
    return Tour(order=tuple(acc), cost=tour_cost(acc, costs))


def held_karp(costs: CostMatrix) -> tuple[float, Tour]:
    """Exact ATSP optimum by bitmask dynamic programming; capped at n=13."""
    n = costs.n
    if n > 13:
        raise CapacityError(f"exact tour search capped at n=13, got n={n}")
    X = costs.finite_sentinel()
    size = 1 << n
    dp = np.full((size, n), np.inf)
    parent = np.full((size, n), -1, dtype=np.int8)
    dp[1, 0] = 0.0
    for mask in range(1, size):
        if not mask & 1:
            continue
        row = dp[mask]
        if not np.isfinite(row).any():
            continue
        rest = (~mask) & (size - 1)
        m = rest
        while m:
            b = m & -m
            j = b.bit_length() - 1
            cand = row + X[:, j]
            k = int(np.argmin(cand))
            nm = mask | b
            if cand[k] < dp[nm, j]:
                dp[nm, j] = cand[k]
                parent[nm, j] = k
            m ^= b
    full = size - 1
    closing = dp[full] + X[:, 0]
    closing[0] = np.inf if n > 1 else closing[0]
    j = int(np.argmin(closing))
    best = float(closing[j])
    order = [j]
    mask = full
    while j != 0:
        k = int(parent[mask, j])
        mask ^= 1 << j
        j = k
        order.append(j)
    order.reverse()
    return best, Tour(order=tuple(order), cost=best)


def row_symmetric_model(beta, n: int, L: float | None = None) -> SimplexModel:
    """Directed simplex whose coefficient depends only on the edge's head vertex."""
    beta = np.broadcast_to(np.asarray(beta, dtype=float), (n,))
    if not np.all(beta > 0):
        raise ValueError("head-vertex weights must be positive")
    space = EdgeSpace(n, directed=True)
    _, heads = space.all_pairs()
    M = float(max(beta.max(), 1.0 / beta.min()))
    return SimplexModel(space, beta[heads], float(L) if L is not None else float(space.num_edges), M=M)


def sample_row_symmetric(model: SimplexModel, rng: SeededRng) -> CostMatrix:
    """Draw a cost matrix from a row-symmetric directed simplex."""
    if not model.space.directed:
        raise ValueError("row-symmetric sampling needs a directed edge space")
    tails, heads = model.space.all_pairs()
    by_head_min = np.full(model.space.n, np.inf)
    by_head_max = np.zeros(model.space.n)
    np.minimum.at(by_head_min, heads, model.alpha)
    np.maximum.at(by_head_max, heads, model.alpha)
    if not np.allclose(by_head_min, by_head_max, rtol=1e-12, atol=0):
        raise ValueError("coefficients must depend on the head vertex only (row symmetry)")
    x = sample_simplex(model, rng)
    m = np.full((model.space.n, model.space.n), np.inf)
    m[tails, heads] = x.x
    return CostMatrix(m)
