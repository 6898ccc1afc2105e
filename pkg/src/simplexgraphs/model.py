"""Core model types: edge indexing, weighted-simplex parameters, threshold graphs.

Edge weights live in a flat coordinate vector indexed by a canonical
lexicographic order over vertex pairs.  Undirected pairs (i, j), i < j, map to

    index(i, j) = i*n - i*(i+1)/2 + (j - i - 1),

directed ordered pairs i != j to ``i*(n-1) + (j - [j > i])``.  Both maps are
O(1) in each direction and vectorize over numpy arrays.

All types here are immutable after construction (arrays are frozen), so they
can be shared freely across concurrent trial workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class EdgeSpace:
    """Vertex count plus orientation; owns the pair <-> coordinate bijection."""

    n: int
    directed: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 vertices, got n={self.n}")

    @property
    def num_edges(self) -> int:
        """Number of coordinates N: n(n-1)/2 undirected, n(n-1) directed."""
        return self.n * (self.n - 1) // (1 if self.directed else 2)

    def index(self, i: int, j: int) -> int:
        """Canonical coordinate of the pair (i, j); undirected pairs are normalized to i < j."""
        self._check_pair(i, j)
        if self.directed:
            return i * (self.n - 1) + (j - 1 if j > i else j)
        if i > j:
            i, j = j, i
        return i * self.n - i * (i + 1) // 2 + (j - i - 1)

    def pair(self, e: int):
        """Inverse of :meth:`index`."""
        if not 0 <= e < self.num_edges:
            raise ValueError(f"edge index {e} out of range for N={self.num_edges}")
        if self.directed:
            i, r = divmod(e, self.n - 1)
            return i, (r + 1 if r >= i else r)
        i, j = self.pair_arrays(np.asarray([e]))
        return int(i[0]), int(j[0])

    def index_arrays(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        if self.directed:
            return i * (self.n - 1) + np.where(j > i, j - 1, j)
        lo = np.minimum(i, j)
        hi = np.maximum(i, j)
        return lo * self.n - lo * (lo + 1) // 2 + (hi - lo - 1)

    def pair_arrays(self, e: np.ndarray):
        """Vectorized inverse map; returns (tails, heads) with tails < heads when undirected."""
        e = np.asarray(e, dtype=np.int64)
        if self.directed:
            i, r = np.divmod(e, self.n - 1)
            return i, np.where(r >= i, r + 1, r)
        b = 2 * self.n - 1
        i = ((b - np.sqrt(b * b - 8.0 * e)) / 2.0).astype(np.int64)
        # one-step correction for float jitter in the sqrt
        start = lambda k: k * (2 * self.n - k - 1) // 2  # noqa: E731
        i = np.where(start(i + 1) <= e, i + 1, i)
        i = np.where(start(i) > e, i - 1, i)
        j = e - start(i) + i + 1
        return i, j

    def all_pairs(self):
        """(tails, heads) arrays for every coordinate in canonical order."""
        return self.pair_arrays(np.arange(self.num_edges))

    def _check_pair(self, i: int, j: int):
        if i == j:
            raise ValueError(f"self-loop ({i},{j}) has no coordinate")
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError(f"vertex pair ({i},{j}) out of range for n={self.n}")


def edge_index(space: EdgeSpace, i: int, j: int) -> int:
    return space.index(i, j)


def edge_pair(space: EdgeSpace, e: int):
    return space.pair(e)


@dataclass(frozen=True)
class SimplexModel:
    """Weight budget polytope {x >= 0 : sum_e alpha_e * x_e <= L}.

    ``alpha`` holds one positive coefficient per coordinate in canonical edge
    order.  ``L`` defaults to the coordinate count N, the normalization under
    which the threshold formulas below take their simplest form.  ``M``, when
    declared, asserts 1/M <= alpha_e <= M for every coordinate.
    """

    space: EdgeSpace
    alpha: np.ndarray
    L: float
    M: float | None = None

    def __post_init__(self):
        alpha = np.broadcast_to(np.asarray(self.alpha, dtype=float), (self.space.num_edges,))
        object.__setattr__(self, "alpha", _frozen(alpha.copy()))
        if not np.all(self.alpha > 0):
            raise ValueError("all alpha coefficients must be positive")
        if not (self.L > 0):
            raise ValueError(f"budget L must be positive, got {self.L}")
        if self.M is not None:
            if self.M < 1:
                raise ValueError("boundedness parameter M must be >= 1")
            lo, hi = self.alpha.min(), self.alpha.max()
            if lo < 1.0 / self.M - 1e-12 or hi > self.M + 1e-12:
                raise ValueError(
                    f"alpha range [{lo:g}, {hi:g}] violates declared bound [1/{self.M:g}, {self.M:g}]"
                )

    @classmethod
    def uniform(cls, n: int, L: float | None = None, directed: bool = False) -> "SimplexModel":
        """All-ones coefficients; the exchangeable case."""
        space = EdgeSpace(n, directed=directed)
        return cls(space, np.ones(space.num_edges), float(L) if L is not None else float(space.num_edges), M=1.0)

    @classmethod
    def from_alpha(cls, space: EdgeSpace, alpha, L: float | None = None, M: float | None = None) -> "SimplexModel":
        return cls(space, np.asarray(alpha, dtype=float), float(L) if L is not None else float(space.num_edges), M=M)

    @cached_property
    def _vertex_alphas(self) -> np.ndarray:
        if self.space.directed:
            raise ValueError("per-vertex alpha sums are defined for undirected spaces")
        tails, heads = self.space.all_pairs()
        acc = np.zeros(self.space.n)
        np.add.at(acc, tails, self.alpha)
        np.add.at(acc, heads, self.alpha)
        return _frozen(acc)

    def vertex_alphas(self) -> np.ndarray:
        """alpha_v = sum over coordinates incident to v, for every vertex."""
        return self._vertex_alphas

    def vertex_alpha(self, v: int) -> float:
        if not 0 <= v < self.space.n:
            raise ValueError(f"vertex {v} out of range for n={self.space.n}")
        return float(self._vertex_alphas[v])

    def alpha_sum(self, edges) -> float:
        """alpha(S) = sum of coefficients over a set of coordinate indices."""
        idx = np.asarray(edges, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self.space.num_edges):
            raise ValueError("edge index out of range")
        return float(self.alpha[idx].sum())


def vertex_alpha(model: SimplexModel, v: int) -> float:
    return model.vertex_alpha(v)


@dataclass(frozen=True)
class DecomposableWeights:
    """Per-vertex factors d_v inducing product coefficients alpha_{vw} = d_v * d_w.

    When ``omega`` is declared the factors are checked against the regime
    d_v in [1/omega, omega].
    """

    d: np.ndarray
    omega: float | None = None

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        object.__setattr__(self, "d", _frozen(d.copy()))
        if d.ndim != 1 or d.size < 2:
            raise ValueError("need a 1-D array of at least two vertex factors")
        if not np.all(d > 0):
            raise ValueError("vertex factors must be positive")
        if self.omega is not None:
            if self.omega < 1:
                raise ValueError("omega must be >= 1")
            if d.min() < 1.0 / self.omega - 1e-12 or d.max() > self.omega + 1e-12:
                raise ValueError("vertex factors leave the declared [1/omega, omega] range")

    @property
    def n(self) -> int:
        return self.d.size

    @property
    def total(self) -> float:
        """D = sum of all vertex factors."""
        return float(self.d.sum())

    def subset_sum(self, vertices) -> float:
        """d_S = sum of factors over a vertex subset."""
        return float(self.d[np.asarray(vertices, dtype=np.int64)].sum())

    def distinct(self):
        """(values, counts) of the distinct factor values."""
        values, counts = np.unique(self.d, return_counts=True)
        return values, counts

    def to_simplex_model(self, L: float | None = None) -> SimplexModel:
        space = EdgeSpace(self.n)
        tails, heads = space.all_pairs()
        alpha = self.d[tails] * self.d[heads]
        return SimplexModel(space, alpha, float(L) if L is not None else float(space.num_edges))


@dataclass(frozen=True)
class WeightVector:
    """One sampled point: a non-negative weight per coordinate in canonical order."""

    space: EdgeSpace
    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.shape != (self.space.num_edges,):
            raise ValueError(f"expected {self.space.num_edges} coordinates, got shape {x.shape}")
        if x.size and x.min() < 0:
            raise ValueError("weights must be non-negative")
        object.__setattr__(self, "x", _frozen(x))

    def budget_used(self, model: SimplexModel) -> float:
        return float(model.alpha @ self.x)


class ThresholdGraph:
    """Graph on [n] keeping exactly the coordinates with weight <= p.

    Stores a flat boolean mask over coordinates (for coupling checks) plus
    the decoded endpoint arrays; adjacency lists are materialized lazily in
    CSR form for traversal.
    """

    __slots__ = ("n", "edge_mask", "edge_indices", "tails", "heads", "_indptr", "_nbrs")

    def __init__(self, n: int, edge_mask: np.ndarray, tails: np.ndarray | None = None, heads: np.ndarray | None = None):
        space = EdgeSpace(n)
        edge_mask = np.asarray(edge_mask, dtype=bool)
        if edge_mask.shape != (space.num_edges,):
            raise ValueError(f"edge mask must have {space.num_edges} entries")
        self.n = n
        self.edge_mask = _frozen(edge_mask)
        self.edge_indices = _frozen(np.flatnonzero(edge_mask))
        if tails is None:
            tails, heads = space.pair_arrays(self.edge_indices)
        self.tails = _frozen(tails)
        self.heads = _frozen(heads)
        self._indptr = None
        self._nbrs = None

    @classmethod
    def from_edges(cls, n: int, pairs) -> "ThresholdGraph":
        """Build directly from an iterable of vertex pairs (tests, CLI)."""
        space = EdgeSpace(n)
        mask = np.zeros(space.num_edges, dtype=bool)
        pairs = list(pairs)
        if pairs:
            i = np.asarray([p[0] for p in pairs])
            j = np.asarray([p[1] for p in pairs])
            mask[space.index_arrays(i, j)] = True
        return cls(n, mask)

    @property
    def edge_count(self) -> int:
        return int(self.edge_indices.size)

    def edges(self):
        """Edge list as (i, j) pairs with i < j."""
        return list(zip(self.tails.tolist(), self.heads.tolist()))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.edge_mask[EdgeSpace(self.n).index(i, j)])

    def _build_adjacency(self):
        ends = np.concatenate([self.tails, self.heads])
        other = np.concatenate([self.heads, self.tails])
        order = np.argsort(ends, kind="stable")
        counts = np.bincount(ends, minlength=self.n)
        self._indptr = np.concatenate([[0], np.cumsum(counts)])
        self._nbrs = other[order]

    def neighbors(self, v: int) -> np.ndarray:
        if self._indptr is None:
            self._build_adjacency()
        return self._nbrs[self._indptr[v] : self._indptr[v + 1]]

    def adjacency(self):
        """Adjacency lists, one array per vertex."""
        return [self.neighbors(v) for v in range(self.n)]

    def degrees(self) -> np.ndarray:
        deg = np.bincount(self.tails, minlength=self.n)
        deg += np.bincount(self.heads, minlength=self.n)
        return deg

    def packed_adjacency(self) -> np.ndarray:
        """Dense adjacency packed to bits, one row of ceil(n/8) bytes per vertex."""
        width = (self.n + 7) // 8
        bits = np.zeros((self.n, width), dtype=np.uint8)
        masks_h = np.uint8(0x80) >> (self.heads & 7).astype(np.uint8)
        masks_t = np.uint8(0x80) >> (self.tails & 7).astype(np.uint8)
        np.bitwise_or.at(bits, (self.tails, self.heads >> 3), masks_h)
        np.bitwise_or.at(bits, (self.heads, self.tails >> 3), masks_t)
        return bits


def threshold(x: WeightVector, p: float) -> ThresholdGraph:
    """Keep the coordinates with x_e <= p; monotone in p for a fixed vector."""
    if p < 0:
        raise ValueError(f"threshold must be non-negative, got {p}")
    if x.space.directed:
        raise ValueError("thresholding is defined on undirected weight vectors")
    return ThresholdGraph(x.space.n, x.x <= p)
