"""Seeded samplers for the supported weight distributions.

Three families, all supported on the positive orthant with down-monotone
logconcave densities:

* uniform over the weighted simplex {x >= 0 : sum alpha_e x_e <= L},
* independent exponential coordinates (rates lambda_e) - the independent
  oracle whose threshold graph is exactly Erdos-Renyi,
* uniform over the orthant part of the Euclidean ball of radius R.

Simplex draws use the N+1-exponentials construction: with E_1..E_{N+1} iid
unit exponentials, y_e = L * E_e / (E_1 + ... + E_{N+1}) is uniform over
{y >= 0 : sum y <= L}, and x_e = y_e / alpha_e lands in the weighted simplex.
Rejection-free, O(N), and trivially seedable.

Exponential variates come from the inverse CDF -log1p(-U) on a counter-based
generator (Philox), so parallel trials split streams without state handoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import betainc, betaln

from .model import EdgeSpace, SimplexModel, WeightVector


class SeededRng:
    """Counter-based random stream keyed by (seed, stream).

    Identical (seed, stream) pairs reproduce identical draw sequences;
    distinct streams are statistically independent.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        key = np.array([self.seed % 2**64, self.stream % 2**64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def split(self, stream: int) -> "SeededRng":
        """Fresh independent stream under the same base seed."""
        return SeededRng(self.seed, stream)

    def uniform(self, size=None):
        return self._gen.random(size)

    def exponential(self, size=None):
        u = self._gen.random(size)
        return -np.log1p(-u)

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)


def sample_simplex(model: SimplexModel, rng: SeededRng) -> WeightVector:
    """One uniform draw from the weighted simplex."""
    return WeightVector(model.space, sample_simplex_batch(model, rng, 1)[0])


def sample_simplex_batch(model: SimplexModel, rng: SeededRng, count: int) -> np.ndarray:
    """``count`` uniform draws, one per row; the fast path for experiments."""
    N = model.space.num_edges
    e = rng.exponential((count, N + 1))
    y = model.L * e[:, :N] / e.sum(axis=1, keepdims=True)
    x = y / model.alpha
    budget = x @ model.alpha
    assert budget.max() <= model.L * (1 + 1e-12), "simplex draw left the budget polytope"
    return x


def sample_product_exponential(rates, space: EdgeSpace, rng: SeededRng) -> WeightVector:
    """Independent exponential coordinates; edge e appears below p w.p. 1 - exp(-lambda_e p)."""
    lam = np.broadcast_to(np.asarray(rates, dtype=float), (space.num_edges,))
    if not np.all(lam > 0):
        raise ValueError("exponential rates must be positive")
    return WeightVector(space, rng.exponential(space.num_edges) / lam)


def sample_orthant_ball(radius: float, space: EdgeSpace, rng: SeededRng) -> WeightVector:
    """Uniform over {x >= 0 : ||x||_2 <= R}.

    A uniform point in the full ball (Gaussian direction scaled by
    R * U^(1/N)) reflected into the orthant; valid because the ball's
    uniform density is unchanged by coordinate sign flips.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    N = space.num_edges
    g = rng.standard_normal(N)
    u = float(rng.uniform())
    r = radius * u ** (1.0 / N)
    return WeightVector(space, np.abs(g) * (r / np.linalg.norm(g)))


@dataclass(frozen=True)
class DensityModel:
    """One of the supported weight densities plus its per-axis moment data.

    Both moment conventions are exposed: ``second_moment`` is E(X_e^2) (the
    scaling quantity), ``std_dev`` the usual standard deviation (the quantity
    the one-dimensional bound checks are stated in).  ``sigma_min``/``sigma_max``
    follow the second-moment convention.
    """

    kind: str
    space: EdgeSpace
    simplex: SimplexModel | None = None
    rates: np.ndarray | None = None
    radius: float | None = None

    @classmethod
    def from_simplex(cls, model: SimplexModel) -> "DensityModel":
        return cls("simplex", model.space, simplex=model)

    @classmethod
    def product_exponential(cls, rates, space: EdgeSpace) -> "DensityModel":
        lam = np.broadcast_to(np.asarray(rates, dtype=float), (space.num_edges,)).copy()
        if not np.all(lam > 0):
            raise ValueError("exponential rates must be positive")
        lam.flags.writeable = False
        return cls("exponential", space, rates=lam)

    @classmethod
    def orthant_ball(cls, radius: float, space: EdgeSpace) -> "DensityModel":
        if radius <= 0:
            raise ValueError("radius must be positive")
        return cls("ball", space, radius=float(radius))

    # --- sampling -----------------------------------------------------------

    def sample(self, rng: SeededRng) -> WeightVector:
        if self.kind == "simplex":
            return sample_simplex(self.simplex, rng)
        if self.kind == "exponential":
            return sample_product_exponential(self.rates, self.space, rng)
        return sample_orthant_ball(self.radius, self.space, rng)

    def sample_batch(self, rng: SeededRng, count: int) -> np.ndarray:
        if self.kind == "simplex":
            return sample_simplex_batch(self.simplex, rng, count)
        return np.stack([self.sample(rng).x for _ in range(count)])

    # --- per-axis moments ----------------------------------------------------

    def second_moment(self, e: int) -> float:
        """E(X_e^2).

        Simplex: 2 L^2 / (alpha_e^2 (N+1)(N+2)), the value consistent with the
        exact marginal law 1 - (1 - alpha_e p / L)^N.
        """
        N = self.space.num_edges
        if self.kind == "simplex":
            m = self.simplex
            return 2.0 * m.L**2 / (m.alpha[e] ** 2 * (N + 1) * (N + 2))
        if self.kind == "exponential":
            return 2.0 / self.rates[e] ** 2
        return self.radius**2 / (N + 2)

    def mean(self, e: int) -> float:
        N = self.space.num_edges
        if self.kind == "simplex":
            m = self.simplex
            return m.L / (m.alpha[e] * (N + 1))
        if self.kind == "exponential":
            return 1.0 / self.rates[e]
        return 2.0 * self.radius / ((N + 1) * _half_beta(N))

    def std_dev(self, e: int) -> float:
        return math.sqrt(self.second_moment(e) - self.mean(e) ** 2)

    def mode_value(self, e: int) -> float:
        """Maximum of the 1-D marginal density (attained at 0 for all kinds)."""
        N = self.space.num_edges
        if self.kind == "simplex":
            m = self.simplex
            return N * m.alpha[e] / m.L
        if self.kind == "exponential":
            return float(self.rates[e])
        return 2.0 / (self.radius * _half_beta(N))

    @property
    def sigma_min(self) -> float:
        return math.sqrt(min(self.second_moment(e) for e in self._axis_probe()))

    @property
    def sigma_max(self) -> float:
        return math.sqrt(max(self.second_moment(e) for e in self._axis_probe()))

    def _axis_probe(self):
        if self.kind == "simplex":
            return [int(np.argmin(self.simplex.alpha)), int(np.argmax(self.simplex.alpha))]
        if self.kind == "exponential":
            return [int(np.argmin(self.rates)), int(np.argmax(self.rates))]
        return [0]


@lru_cache(maxsize=64)
def _half_beta(N: int) -> float:
    """B(1/2, (N+1)/2), the normalizer of the ball's 1-D marginal."""
    return math.exp(betaln(0.5, (N + 1) / 2.0))


def marginal_cdf(model: DensityModel, e: int, p: float) -> float:
    """Exact CDF of coordinate e at p.

    simplex      1 - (1 - alpha_e p / L)^N, clamped to 1 once alpha_e p >= L
    exponential  1 - exp(-lambda_e p)
    ball         regularized incomplete beta I_{(p/R)^2}(1/2, (N+1)/2)
    """
    if p < 0:
        raise ValueError(f"threshold must be non-negative, got {p}")
    N = model.space.num_edges
    if model.kind == "simplex":
        m = model.simplex
        from ._numeric import pow_one_minus

        return 1.0 - pow_one_minus(m.alpha[e] * p / m.L, N)
    if model.kind == "exponential":
        return -math.expm1(-model.rates[e] * p)
    x = min((p / model.radius) ** 2, 1.0)
    return float(betainc(0.5, (N + 1) / 2.0, x))
