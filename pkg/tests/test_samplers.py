import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import chi2_contingency

from simplexgraphs import (
    DensityModel,
    EdgeSpace,
    SeededRng,
    SimplexModel,
    marginal_cdf,
    sample_orthant_ball,
    sample_product_exponential,
    sample_simplex,
    sample_simplex_batch,
)

KS_LIMIT = 0.0062  # 1e5-sample critical value used throughout


def ks_distance(samples: np.ndarray, cdf) -> float:
    vals = np.sort(samples)
    probs = cdf(vals)
    k = np.arange(1, vals.size + 1)
    return max(np.max(k / vals.size - probs), np.max(probs - (k - 1) / vals.size))


def _ball_marginal_pdf(N: int, R: float):
    norm = quad(lambda t: (1 - (t / R) ** 2) ** ((N - 1) / 2), 0, R)[0]
    return lambda t: (1 - (t / R) ** 2) ** ((N - 1) / 2) / norm


class TestSimplexSampler:
    def test_budget_constraint_always_holds(self):
        model = SimplexModel.uniform(8, L=10.0)
        xs = sample_simplex_batch(model, SeededRng(1, 0), 2000)
        assert (xs >= 0).all()
        assert (xs @ model.alpha <= model.L * (1 + 1e-12)).all()

    def test_single_draw_is_weight_vector(self):
        model = SimplexModel.uniform(5)
        x = sample_simplex(model, SeededRng(2, 0))
        assert x.budget_used(model) <= model.L

    def test_marginal_frequency_matches_closed_form(self):
        # n=20, L=N: P(X_e <= 0.5) = 1 - (1 - 0.5/190)^190
        model = SimplexModel.uniform(20)
        xs = sample_simplex_batch(model, SeededRng(3, 0), 100_000)
        p = 0.5
        expected = 1.0 - (1.0 - p / model.L) ** model.space.num_edges
        freq = (xs[:, 7] <= p).mean()
        se = math.sqrt(expected * (1 - expected) / xs.shape[0])
        assert abs(freq - expected) < 3 * se

    def test_second_moment_matches_formula(self):
        # n=4, L=6: E(X_e^2) = 2 L^2 / ((N+1)(N+2)) = 72/56
        model = SimplexModel.uniform(4, L=6.0)
        xs = sample_simplex_batch(model, SeededRng(4, 0), 100_000)
        sq = xs[:, 0] ** 2
        se = sq.std(ddof=1) / math.sqrt(sq.size)
        assert abs(sq.mean() - 72.0 / 56.0) < 3 * se

    def test_general_alpha_lands_in_weighted_simplex(self):
        rng = np.random.default_rng(7)
        space = EdgeSpace(6)
        model = SimplexModel(space, rng.uniform(0.5, 2.0, space.num_edges), 9.0)
        xs = sample_simplex_batch(model, SeededRng(5, 0), 500)
        assert (xs @ model.alpha <= model.L * (1 + 1e-12)).all()

    def test_ks_against_exact_marginal(self):
        model = SimplexModel.uniform(20)
        density = DensityModel.from_simplex(model)
        xs = sample_simplex_batch(model, SeededRng(6, 0), 100_000)
        N = model.space.num_edges
        d = ks_distance(xs[:, 0], lambda v: 1.0 - (1.0 - np.minimum(v / model.L, 1.0)) ** N)
        assert d < KS_LIMIT
        # spot agreement with the library CDF
        assert marginal_cdf(density, 0, 0.5) == pytest.approx(1.0 - (1.0 - 0.5 / 190) ** 190)

    def test_exchangeability_under_relabeling(self):
        # all-ones coefficients: a fixed edge relabeling must not change the
        # distribution of how many of k tracked coordinates fall below p
        model = SimplexModel.uniform(8)
        N = model.space.num_edges
        perm_rng = np.random.default_rng(12)
        S = perm_rng.choice(N, size=6, replace=False)
        perm = perm_rng.permutation(N)
        xs1 = sample_simplex_batch(model, SeededRng(13, 0), 30_000)
        xs2 = sample_simplex_batch(model, SeededRng(13, 1), 30_000)
        p = 0.6
        counts1 = (xs1[:, S] <= p).sum(axis=1)
        counts2 = (xs2[:, perm[S]] <= p).sum(axis=1)
        table = np.vstack(
            [np.bincount(counts1, minlength=7), np.bincount(counts2, minlength=7)]
        )
        table = table[:, table.sum(axis=0) > 0]
        _, pvalue, _, _ = chi2_contingency(table)
        assert pvalue > 1e-3

    def test_bit_identical_reproducibility(self):
        model = SimplexModel.uniform(10)
        a = sample_simplex_batch(model, SeededRng(99, 5), 50)
        b = sample_simplex_batch(model, SeededRng(99, 5), 50)
        assert np.array_equal(a, b)
        c = sample_simplex_batch(model, SeededRng(99, 6), 50)
        assert not np.array_equal(a, c)


class TestExponentialSampler:
    def test_edge_probability(self):
        # lambda=1, p=0.1: per-edge probability 1 - e^{-0.1}
        space = EdgeSpace(10)
        rng = SeededRng(21, 0)
        hits = np.array([sample_product_exponential(1.0, space, rng).x[0] <= 0.1 for _ in range(20_000)])
        expected = 1.0 - math.exp(-0.1)
        assert expected == pytest.approx(0.09516, abs=5e-6)
        se = math.sqrt(expected * (1 - expected) / hits.size)
        assert abs(hits.mean() - expected) < 3 * se

    def test_independence_of_edge_indicators(self):
        space = EdgeSpace(6)
        rng = SeededRng(22, 0)
        xs = np.stack([sample_product_exponential(1.0, space, rng).x for _ in range(100_000)])
        p = 0.3
        a = (xs[:, 2] <= p).astype(float)
        b = (xs[:, 9] <= p).astype(float)
        corr = np.corrcoef(a, b)[0, 1]
        assert abs(corr) < 3.0 / math.sqrt(xs.shape[0])

    def test_second_moment(self):
        space = EdgeSpace(4)
        density = DensityModel.product_exponential(np.full(6, 2.0), space)
        assert density.second_moment(0) == pytest.approx(2.0 / 4.0)

    def test_rate_validation(self):
        with pytest.raises(ValueError):
            sample_product_exponential(-1.0, EdgeSpace(3), SeededRng(0, 0))

    def test_ks(self):
        space = EdgeSpace(3)
        rng = SeededRng(23, 0)
        samples = np.concatenate([sample_product_exponential(1.5, space, rng).x for _ in range(34_000)])[:100_000]
        d = ks_distance(samples, lambda v: 1.0 - np.exp(-1.5 * v))
        assert d < KS_LIMIT


class TestOrthantBallSampler:
    def test_support(self):
        space = EdgeSpace(5)
        rng = SeededRng(31, 0)
        for _ in range(200):
            x = sample_orthant_ball(2.0, space, rng)
            assert (x.x >= 0).all()
            assert np.linalg.norm(x.x) <= 2.0 + 1e-12

    def test_second_moment_mc_and_quadrature(self):
        space = EdgeSpace(4)  # N = 6
        R = 1.5
        rng = SeededRng(32, 0)
        xs = np.stack([sample_orthant_ball(R, space, rng).x for _ in range(60_000)])
        sq = xs[:, 3] ** 2
        expected = R**2 / (space.num_edges + 2)
        se = sq.std(ddof=1) / math.sqrt(sq.size)
        assert abs(sq.mean() - expected) < 3 * se
        pdf = _ball_marginal_pdf(space.num_edges, R)
        by_quad = quad(lambda t: t * t * pdf(t), 0, R)[0]
        assert by_quad == pytest.approx(expected, rel=1e-8)

    def test_reduces_to_uniform_interval_when_single_coordinate(self):
        space = EdgeSpace(2)  # N = 1
        density = DensityModel.orthant_ball(2.0, space)
        assert marginal_cdf(density, 0, 0.5) == pytest.approx(0.25)
        assert marginal_cdf(density, 0, 2.0) == pytest.approx(1.0)

    def test_cdf_matches_numerical_integration(self):
        space = EdgeSpace(7)  # N = 21
        R = 1.2
        density = DensityModel.orthant_ball(R, space)
        pdf = _ball_marginal_pdf(space.num_edges, R)
        for p in (0.05, 0.2, 0.5, 1.0):
            assert marginal_cdf(density, 0, p) == pytest.approx(quad(pdf, 0, p)[0], abs=1e-10)

    def test_ks(self):
        space = EdgeSpace(3)  # N = 3
        R = 1.0
        rng = SeededRng(33, 0)
        samples = np.concatenate([sample_orthant_ball(R, space, rng).x for _ in range(34_000)])[:100_000]
        density = DensityModel.orthant_ball(R, space)
        d = ks_distance(samples, lambda v: np.asarray([marginal_cdf(density, 0, float(t)) for t in v]))
        assert d < KS_LIMIT


class TestMarginalCdf:
    def test_simplex_hand_value(self):
        density = DensityModel.from_simplex(SimplexModel.uniform(4, L=6.0))
        assert marginal_cdf(density, 0, 0.5) == pytest.approx(1.0 - (11.0 / 12.0) ** 6)
        assert marginal_cdf(density, 0, 0.5) == pytest.approx(0.40670, abs=1e-5)

    def test_zero_threshold(self):
        for density in (
            DensityModel.from_simplex(SimplexModel.uniform(4)),
            DensityModel.product_exponential(1.0, EdgeSpace(4)),
            DensityModel.orthant_ball(1.0, EdgeSpace(4)),
        ):
            assert marginal_cdf(density, 0, 0.0) == 0.0

    def test_simplex_support_boundary(self):
        density = DensityModel.from_simplex(SimplexModel.uniform(4, L=6.0))
        assert marginal_cdf(density, 0, 6.0) == 1.0
        assert marginal_cdf(density, 0, 9.0) == 1.0

    def test_negative_threshold_rejected(self):
        density = DensityModel.product_exponential(1.0, EdgeSpace(3))
        with pytest.raises(ValueError):
            marginal_cdf(density, 0, -0.5)


class TestMomentConventions:
    def test_simplex_sd_below_rms(self):
        density = DensityModel.from_simplex(SimplexModel.uniform(20))
        assert density.std_dev(0) < math.sqrt(density.second_moment(0))

    def test_exponential_sd_equals_mean(self):
        density = DensityModel.product_exponential(2.0, EdgeSpace(5))
        assert density.std_dev(0) == pytest.approx(0.5)
        assert density.second_moment(0) == pytest.approx(0.5)

    def test_sigma_min_max(self):
        space = EdgeSpace(4)
        density = DensityModel.product_exponential(np.array([1.0, 2.0, 4.0, 1.0, 1.0, 1.0]), space)
        assert density.sigma_max == pytest.approx(math.sqrt(2.0))
        assert density.sigma_min == pytest.approx(math.sqrt(2.0 / 16.0))

    def test_ball_mean_matches_quadrature(self):
        space = EdgeSpace(6)
        R = 1.3
        density = DensityModel.orthant_ball(R, space)
        pdf = _ball_marginal_pdf(space.num_edges, R)
        assert density.mean(0) == pytest.approx(quad(lambda t: t * pdf(t), 0, R)[0], rel=1e-10)

    def test_mode_values(self):
        simplex = DensityModel.from_simplex(SimplexModel.uniform(4, L=6.0))
        assert simplex.mode_value(0) == pytest.approx(1.0)  # N alpha / L = 6/6
        expo = DensityModel.product_exponential(3.0, EdgeSpace(3))
        assert expo.mode_value(0) == pytest.approx(3.0)
        ball = DensityModel.orthant_ball(2.0, EdgeSpace(2))  # N=1: uniform on [0, 2]
        assert ball.mode_value(0) == pytest.approx(0.5)


class TestSdGridBounds:
    """p/(2 sd) <= P(X_e <= p) <= p * M_f on a 100-point grid p in [0, sd].

    Checked for the exponential and simplex marginals, where the marginal mode
    satisfies M_f ~ 1/sd so the chained lower bound holds.  (For the ball
    marginal M_f is strictly below 1/sd and the sd-form lower bound provably
    fails near p = sd; the mode-form bounds for all kinds live in the
    check_basic_bounds tests.)
    """

    @pytest.mark.parametrize(
        "density",
        [
            DensityModel.product_exponential(1.0, EdgeSpace(5)),
            DensityModel.product_exponential(3.5, EdgeSpace(5)),
            DensityModel.from_simplex(SimplexModel.uniform(20)),
            DensityModel.from_simplex(SimplexModel.uniform(6, L=4.0)),
        ],
    )
    def test_grid(self, density):
        sd = density.std_dev(0)
        mode = density.mode_value(0)
        for p in np.linspace(0.0, sd, 100):
            cdf = marginal_cdf(density, 0, float(p))
            assert cdf <= p * mode + 1e-12
            assert cdf >= p / (2.0 * sd) - 1e-12
