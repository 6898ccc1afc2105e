"""Seeded Monte Carlo harness: configs, sweeps, CSV output, named experiments.

Every trial is reproducible in isolation: trial (p_index, t) draws from the
counter-based stream ``p_index * 2^32 + t`` under the config's base seed, so
results are byte-identical regardless of worker count or scheduling order.
Model-level randomness (e.g. random bounded coefficients) uses a reserved
stream of its own.

CSV contract: one header row naming every column, one trial per line, then
summary lines prefixed ``#summary,`` carrying empirical frequencies or means
with Wilson 95% intervals where applicable.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import graphs, oracle
from .atsp import held_karp, hungarian, patch, row_symmetric_model, sample_row_symmetric
from .errors import CapacityError, ConfigError
from .model import DecomposableWeights, EdgeSpace, SimplexModel, threshold
from .samplers import DensityModel, SeededRng, marginal_cdf, sample_simplex

KINDS = (
    "connectivity",
    "matching",
    "giant",
    "diameter",
    "hamilton",
    "mst",
    "atsp",
    "moments",
    "marginals",
)

MODEL_KINDS = ("simplex", "exponential", "ball")
P_MODES = ("explicit", "clogn", "p0eps", "theta")

_ALPHA_STREAM = 1 << 48  # reserved stream for model-coefficient randomness

AUX_COLUMNS = {
    "connectivity": ("kappa", "edges"),
    "matching": ("edges",),
    "giant": ("kappa", "edges"),
    "diameter": ("edges",),
    "hamilton": ("edges",),
    "moments": (),
    "marginals": ("value",),
    "mst": (),
    "atsp": ("tour_cost", "assignment_cost", "cycles", "optimal_cost"),
}

_BOOL_KINDS = ("connectivity", "matching", "hamilton", "marginals")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    n: int
    trials: int
    seed: int
    model: str = "simplex"
    alpha: str = "ones"
    L: float | None = None
    rate: float = 1.0
    radius: float = 1.0
    p_mode: str = "explicit"
    p_values: tuple[float, ...] = ()
    c_values: tuple[float, ...] = ()
    eps: float | None = None
    theta: float | None = None
    beta: str = "ones"
    edge: int = 0
    workers: int = 1
    out: str | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.model not in MODEL_KINDS:
            raise ConfigError(f"unknown model kind {self.model!r}")
        if self.n < 2:
            raise ConfigError(f"need n >= 2, got {self.n}")
        if self.trials < 0:
            raise ConfigError("trials must be non-negative")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.kind == "matching" and self.n % 2:
            raise ConfigError("perfect-matching experiments need even n")
        if self.kind == "hamilton" and self.n > 24:
            raise CapacityError(f"Hamiltonicity experiments capped at n=24, got n={self.n}")
        if self.kind in ("mst", "atsp"):
            if self.model != "simplex":
                raise ConfigError(f"{self.kind} experiments run on the simplex model")
        elif self.p_mode not in P_MODES:
            raise ConfigError(f"unknown p_mode {self.p_mode!r}")
        elif self.p_mode == "explicit":
            if not self.p_values:
                raise ConfigError("explicit p schedule needs at least one value")
            if any(p < 0 for p in self.p_values):
                raise ConfigError("thresholds must be non-negative")
        elif self.p_mode == "clogn":
            if not self.c_values:
                raise ConfigError("clogn schedule needs a c list")
            if any(math.log(self.n) + c <= 0 for c in self.c_values):
                raise ConfigError("clogn schedule produced a non-positive threshold")
        elif self.p_mode == "p0eps":
            if self.model != "simplex":
                raise ConfigError("the p0eps schedule is defined for the simplex model")
            if self.eps is None or not (0 < self.eps < 1):
                raise ConfigError("p0eps schedule needs a fixed eps in (0, 1)")
        elif self.p_mode == "theta":
            if self.theta is None or not (0 < self.theta < 1):
                raise ConfigError("theta schedule needs theta in (0, 1)")
        if self.kind == "marginals":
            space = EdgeSpace(self.n)
            if not 0 <= self.edge < space.num_edges:
                raise ConfigError(f"marginal coordinate {self.edge} out of range")


_CONFIG_KEYS = {
    "kind": str,
    "model": str,
    "n": int,
    "alpha": str,
    "L": float,
    "rate": float,
    "radius": float,
    "p": "floats",
    "p_mode": str,
    "c": "floats",
    "eps": float,
    "theta": float,
    "beta": str,
    "edge": int,
    "trials": int,
    "seed": int,
    "workers": int,
    "out": str,
}


def parse_config(text: str) -> ExperimentConfig:
    """Flat key=value config text -> validated ExperimentConfig."""
    data: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in data:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        data[key] = value
    return config_from_mapping(data)


def config_from_mapping(data: dict[str, str]) -> ExperimentConfig:
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for required in ("kind", "n", "trials", "seed"):
        if required not in data:
            raise ConfigError(f"missing required config key {required!r}")

    def get(key, default=None):
        if key not in data or data[key] == "":
            return default
        conv = _CONFIG_KEYS[key]
        try:
            if conv == "floats":
                return tuple(float(tok) for tok in data[key].split(","))
            return conv(data[key])
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {data[key]!r}") from exc

    cfg = ExperimentConfig(
        kind=get("kind"),
        n=get("n"),
        trials=get("trials"),
        seed=get("seed"),
        model=get("model", "simplex"),
        alpha=get("alpha", "ones"),
        L=get("L"),
        rate=get("rate", 1.0),
        radius=get("radius", 1.0),
        p_mode=get("p_mode", "explicit"),
        p_values=get("p", ()),
        c_values=get("c", ()),
        eps=get("eps"),
        theta=get("theta"),
        beta=get("beta", "ones"),
        edge=get("edge", 0),
        workers=get("workers", 1),
        out=get("out"),
    )
    cfg.validate()
    return cfg


def load_config(path: str) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())


# --- model materialization -----------------------------------------------------


def resolve_alpha(spec: str, space: EdgeSpace, seed: int) -> np.ndarray:
    """Coefficient vector from an alpha spec string.

    ones | const:<x> | uniform:<M> (iid in [1/M, M], reserved stream) |
    dvalues:<v>x<count>,... (decomposable per-vertex factors)
    """
    if spec in ("ones", "1"):
        return np.ones(space.num_edges)
    if spec.startswith("const:"):
        value = float(spec[6:])
        if value <= 0:
            raise ConfigError("constant coefficient must be positive")
        return np.full(space.num_edges, value)
    if spec.startswith("uniform:"):
        bound = float(spec[8:])
        if bound < 1:
            raise ConfigError("uniform:M needs M >= 1")
        rng = SeededRng(seed, _ALPHA_STREAM)
        return 1.0 / bound + (bound - 1.0 / bound) * rng.uniform(space.num_edges)
    if spec.startswith("dvalues:"):
        d = resolve_dvalues(spec, space.n)
        tails, heads = space.all_pairs()
        return d[tails] * d[heads]
    raise ConfigError(f"unknown alpha spec {spec!r}")


def resolve_dvalues(spec: str, n: int) -> np.ndarray:
    """Per-vertex factors from 'ones' or 'dvalues:<v>x<count>,...' (counts sum to n)."""
    if spec in ("ones", "1"):
        return np.ones(n)
    if not spec.startswith("dvalues:"):
        raise ConfigError(f"expected a dvalues spec, got {spec!r}")
    parts = spec[8:].split(",")
    values = []
    for part in parts:
        if "x" not in part:
            raise ConfigError(f"bad dvalues item {part!r} (want <value>x<count>)")
        v, k = part.split("x", 1)
        values.extend([float(v)] * int(k))
    if len(values) != n:
        raise ConfigError(f"dvalues counts sum to {len(values)}, config says n={n}")
    return np.asarray(values)


def resolve_beta(spec: str, n: int, seed: int) -> np.ndarray:
    if spec in ("ones", "1"):
        return np.ones(n)
    if spec.startswith("const:"):
        return np.full(n, float(spec[6:]))
    if spec.startswith("uniform:"):
        bound = float(spec[8:])
        if bound < 1:
            raise ConfigError("uniform:M needs M >= 1")
        rng = SeededRng(seed, _ALPHA_STREAM)
        return 1.0 / bound + (bound - 1.0 / bound) * rng.uniform(n)
    raise ConfigError(f"unknown beta spec {spec!r}")


@dataclass
class _SweepContext:
    config: ExperimentConfig
    schedule: tuple[float, ...]
    density: DensityModel | None = None
    simplex: SimplexModel | None = None
    atsp_model: SimplexModel | None = None


def _build_context(config: ExperimentConfig) -> _SweepContext:
    config.validate()
    if config.kind == "atsp":
        beta = resolve_beta(config.beta, config.n, config.seed)
        return _SweepContext(config, (math.inf,), atsp_model=row_symmetric_model(beta, config.n, config.L))
    if config.kind == "mst":
        d = resolve_dvalues(config.alpha, config.n)
        model = DecomposableWeights(d).to_simplex_model(config.L)
        return _SweepContext(config, (math.inf,), simplex=model)

    space = EdgeSpace(config.n)
    if config.model == "simplex":
        alpha = resolve_alpha(config.alpha, space, config.seed)
        model = SimplexModel(space, alpha, config.L if config.L is not None else float(space.num_edges))
        density = DensityModel.from_simplex(model)
    elif config.model == "exponential":
        if config.rate <= 0:
            raise ConfigError("exponential rate must be positive")
        model = None
        density = DensityModel.product_exponential(config.rate, space)
    else:
        if config.radius <= 0:
            raise ConfigError("ball radius must be positive")
        model = None
        density = DensityModel.orthant_ball(config.radius, space)

    if config.p_mode == "explicit":
        schedule = tuple(config.p_values)
    elif config.p_mode == "clogn":
        schedule = tuple((math.log(config.n) + c) / config.n for c in config.c_values)
    elif config.p_mode == "theta":
        schedule = (config.n ** (config.theta - 1.0),)
    else:  # p0eps
        p0 = oracle.solve_p0(model)
        schedule = ((1.0 - config.eps) * p0, (1.0 + config.eps) * p0)
    if config.p_mode != "explicit" and any(not p > 0 for p in schedule):
        raise ConfigError("derived schedule produced a non-positive threshold")
    return _SweepContext(config, schedule, density=density, simplex=model)


# --- trial execution -------------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    p_index: int
    trial: int
    stream: int
    p: float
    outcome: float
    aux: tuple[float, ...] = ()


def trial_stream(p_index: int, trial: int) -> int:
    return (p_index << 32) | trial


def _run_trial(ctx: _SweepContext, p_index: int, p: float, trial: int) -> TrialRecord:
    cfg = ctx.config
    stream = trial_stream(p_index, trial)
    rng = SeededRng(cfg.seed, stream)
    kind = cfg.kind
    if kind == "atsp":
        costs = sample_row_symmetric(ctx.atsp_model, rng)
        assignment = hungarian(costs)
        tour = patch(assignment, costs)
        optimal = held_karp(costs)[0] if cfg.n <= 13 else math.nan
        outcome = tour.cost / assignment.cost
        aux = (tour.cost, assignment.cost, float(len(assignment.cycles)), optimal)
    elif kind == "mst":
        x = sample_simplex(ctx.simplex, rng)
        outcome = graphs.mst_weight(x)[0]
        aux = ()
    elif kind == "moments":
        x = ctx.density.sample(rng)
        outcome = float(np.count_nonzero(x.x <= p))
        aux = ()
    elif kind == "marginals":
        x = ctx.density.sample(rng)
        value = float(x.x[cfg.edge])
        outcome = 1.0 if value <= p else 0.0
        aux = (value,)
    else:
        g = threshold(ctx.density.sample(rng), p)
        m = float(g.edge_count)
        if kind == "connectivity":
            summary = graphs.components(g)
            outcome = 1.0 if summary.kappa == 1 else 0.0
            aux = (float(summary.kappa), m)
        elif kind == "giant":
            summary = graphs.components(g)
            outcome = summary.largest_fraction
            aux = (float(summary.kappa), m)
        elif kind == "matching":
            outcome = 1.0 if graphs.bipartite_perfect_matching(g) else 0.0
            aux = (m,)
        elif kind == "diameter":
            outcome = float(graphs.diameter(g))
            aux = (m,)
        else:  # hamilton
            outcome = 1.0 if graphs.is_hamiltonian(g) else 0.0
            aux = (m,)
    return TrialRecord(p_index, trial, stream, p, outcome, aux)


_WORKER_CTX: _SweepContext | None = None


def _init_worker(config: ExperimentConfig) -> None:
    global _WORKER_CTX
    _WORKER_CTX = _build_context(config)


def _worker_trial(task: tuple[int, float, int]) -> TrialRecord:
    p_index, p, trial = task
    return _run_trial(_WORKER_CTX, p_index, p, trial)


# --- statistics ------------------------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = 1.96) -> tuple[float, float]:
    """Wilson 95% score interval; correct near 0/1 where threshold experiments live."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".12g")
    return str(v)


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    schedule: tuple[float, ...]
    records: tuple[TrialRecord, ...]
    summaries: tuple[dict, ...]
    csv_text: str


def _summarize(ctx: _SweepContext, p_index: int, p: float, records: list[TrialRecord]) -> dict:
    cfg = ctx.config
    out: dict = {"p_index": p_index, "p": p, "trials": len(records)}
    values = np.asarray([r.outcome for r in records], dtype=float)
    if cfg.kind in _BOOL_KINDS:
        successes = int(values.sum()) if values.size else 0
        freq = successes / values.size if values.size else math.nan
        lo, hi = wilson_interval(successes, values.size)
        out.update(freq=freq, wilson_lo=lo, wilson_hi=hi, oracle=_oracle_value(ctx, p_index, p))
    elif cfg.kind == "diameter":
        finite = values[np.isfinite(values)]
        if values.size:
            ints, counts = (np.unique(finite, return_counts=True) if finite.size else (np.asarray([math.inf]), np.asarray([0])))
            mode = float(ints[np.argmax(counts)]) if finite.size else math.inf
            mode_freq = counts.max() / values.size if finite.size else 0.0
        else:
            mode, mode_freq = math.nan, math.nan
        out.update(
            mode=mode,
            mode_freq=mode_freq,
            inf_count=int(np.isinf(values).sum()),
            mean_finite=float(finite.mean()) if finite.size else math.nan,
        )
    elif cfg.kind == "moments":
        mean = float(values.mean()) if values.size else math.nan
        var = float(values.var(ddof=1)) if values.size > 1 else math.nan
        expected = math.nan
        bound = math.nan
        if ctx.simplex is not None and np.all(ctx.simplex.alpha == 1.0):
            expected = oracle.expected_edge_count(ctx.simplex, p)
            bound = oracle.edge_count_variance_bound(ctx.simplex, p)
        out.update(mean=mean, var=var, expected=expected, var_bound=bound)
    elif cfg.kind == "atsp":
        ratios = values
        cycles = np.asarray([r.aux[2] for r in records], dtype=float)
        tour_over_opt = np.asarray(
            [r.aux[0] / r.aux[3] for r in records if math.isfinite(r.aux[3])]
        )
        out.update(
            mean_ratio=float(ratios.mean()) if ratios.size else math.nan,
            se_ratio=float(ratios.std(ddof=1) / math.sqrt(ratios.size)) if ratios.size > 1 else math.nan,
            mean_cycles=float(cycles.mean()) if cycles.size else math.nan,
            mean_tour_over_opt=float(tour_over_opt.mean()) if tour_over_opt.size else math.nan,
        )
    else:  # giant, mst
        mean = float(values.mean()) if values.size else math.nan
        sd = float(values.std(ddof=1)) if values.size > 1 else math.nan
        out.update(
            mean=mean,
            sd=sd,
            se=sd / math.sqrt(values.size) if values.size > 1 else math.nan,
            min=float(values.min()) if values.size else math.nan,
            max=float(values.max()) if values.size else math.nan,
        )
    return out


def _oracle_value(ctx: _SweepContext, p_index: int, p: float) -> float:
    cfg = ctx.config
    if cfg.kind == "marginals":
        return marginal_cdf(ctx.density, cfg.edge, p)
    if (
        cfg.kind == "connectivity"
        and cfg.p_mode == "clogn"
        and cfg.model == "simplex"
        and ctx.simplex is not None
        and np.all(ctx.simplex.alpha == 1.0)
    ):
        c = cfg.c_values[p_index]
        return math.exp(-math.exp(-c))
    return math.nan


def run_sweep(config: ExperimentConfig) -> SweepResult:
    """Run trials for every threshold in the schedule and emit CSV plus summaries."""
    ctx = _build_context(config)
    tasks = [(pi, p, t) for pi, p in enumerate(ctx.schedule) for t in range(config.trials)]
    if config.workers > 1 and tasks:
        chunk = max(1, len(tasks) // (config.workers * 8))
        with ProcessPoolExecutor(max_workers=config.workers, initializer=_init_worker, initargs=(config,)) as pool:
            records = list(pool.map(_worker_trial, tasks, chunksize=chunk))
    else:
        records = [_run_trial(ctx, pi, p, t) for pi, p, t in tasks]
    records.sort(key=lambda r: (r.p_index, r.trial))

    summaries = []
    if config.trials > 0:
        for pi, p in enumerate(ctx.schedule):
            block = [r for r in records if r.p_index == pi]
            summaries.append(_summarize(ctx, pi, p, block))

    aux_cols = AUX_COLUMNS[config.kind]
    lines = [",".join(("p_index", "trial", "stream", "p", "outcome") + aux_cols)]
    for r in records:
        lines.append(
            ",".join(
                [str(r.p_index), str(r.trial), str(r.stream), _fmt(r.p), _fmt(r.outcome)]
                + [_fmt(a) for a in r.aux]
            )
        )
    for s in summaries:
        lines.append("#summary," + ",".join(f"{k}={_fmt(v)}" for k, v in s.items()))
    csv_text = "\n".join(lines) + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(csv_text)
    return SweepResult(config, ctx.schedule, tuple(records), tuple(summaries), csv_text)


# --- named experiments --------------------------------------------------------


@dataclass(frozen=True)
class LimitLawRow:
    c: float
    p: float
    frequency: float
    wilson_lo: float
    wilson_hi: float
    theory: float


def connectivity_limit_experiment(n: int, c_values, trials: int, seed: int, workers: int = 1) -> list[LimitLawRow]:
    """Connectivity frequency at p = (ln n + c)/n vs the double-exponential limit law.

    Stated for the all-ones model only; anything else is a config error.
    """
    config = ExperimentConfig(
        kind="connectivity",
        n=n,
        trials=trials,
        seed=seed,
        alpha="ones",
        p_mode="clogn",
        c_values=tuple(float(c) for c in c_values),
        workers=workers,
    )
    result = run_sweep(config)
    rows = []
    for c, s in zip(config.c_values, result.summaries):
        rows.append(
            LimitLawRow(
                c=c,
                p=s["p"],
                frequency=s["freq"],
                wilson_lo=s["wilson_lo"],
                wilson_hi=s["wilson_hi"],
                theory=math.exp(-math.exp(-c)),
            )
        )
    return rows


@dataclass(frozen=True)
class TransitionResult:
    p0: float
    eps: float
    freq_below: float
    below_interval: tuple[float, float]
    freq_above: float
    above_interval: tuple[float, float]
    trials: int
    bound_M: float


def threshold_transition_experiment(model: SimplexModel, eps: float, trials: int, seed: int) -> TransitionResult:
    """Connectivity frequencies just below and just above the isolation threshold p0."""
    if not (0 < eps < 1):
        raise ConfigError("the transition experiment needs a fixed eps in (0, 1)")
    n = model.space.n
    bound_m = float(max(model.alpha.max(), 1.0 / model.alpha.min()))
    if bound_m > math.log(n) ** 0.25:
        warnings.warn(
            f"M={bound_m:.3g} exceeds (ln n)^(1/4)={math.log(n) ** 0.25:.3g}; "
            "the sharp-threshold hypothesis is violated",
            stacklevel=2,
        )
    p0 = oracle.solve_p0(model)
    freqs = []
    intervals = []
    for p_index, p in enumerate(((1 - eps) * p0, (1 + eps) * p0)):
        hits = 0
        for t in range(trials):
            rng = SeededRng(seed, trial_stream(p_index, t))
            g = threshold(sample_simplex(model, rng), p)
            hits += graphs.is_connected(g)
        freqs.append(hits / trials if trials else math.nan)
        intervals.append(wilson_interval(hits, trials))
    return TransitionResult(p0, eps, freqs[0], intervals[0], freqs[1], intervals[1], trials, bound_m)


@dataclass(frozen=True)
class MstExperimentResult:
    mc_mean: float
    mc_se: float
    series_value: float
    relative_gap: float
    trials: int
    series_mode: str


def mst_experiment(weights: DecomposableWeights, n: int, trials: int, seed: int) -> MstExperimentResult:
    """Monte Carlo mean spanning-tree weight vs the closed-form series."""
    if weights.n != n:
        raise ConfigError(f"weights describe {weights.n} vertices, config says n={n}")
    if n <= 20:
        mode = "exact"
    elif len(weights.distinct()[0]) <= 4:
        mode = "grouped"
    else:
        raise ConfigError("no series mode available: n > 20 with more than 4 distinct factors")
    series = oracle.mst_series(weights, mode=mode)
    model = weights.to_simplex_model()
    values = np.empty(trials)
    for t in range(trials):
        rng = SeededRng(seed, trial_stream(0, t))
        values[t] = graphs.mst_weight(sample_simplex(model, rng))[0]
    mean = float(values.mean()) if trials else math.nan
    se = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan
    return MstExperimentResult(mean, se, series, abs(mean - series) / series, trials, mode)


@dataclass(frozen=True)
class AtspRow:
    n: int
    trials: int
    mean_tour_over_assignment: float
    se_tour_over_assignment: float
    mean_tour_over_optimal: float
    mean_cycles: float
    bound_M: float


def atsp_experiment(beta_spec: str, n_values, trials: int, seed: int) -> list[AtspRow]:
    """Tour quality ratios across sizes; exact optimum included where n <= 13."""
    rows = []
    for n_index, n in enumerate(n_values):
        beta = resolve_beta(beta_spec, n, seed)
        model = row_symmetric_model(beta, n)
        ratios = np.empty(trials)
        opt_ratios = []
        cycle_counts = np.empty(trials)
        for t in range(trials):
            rng = SeededRng(seed, trial_stream(n_index, t))
            costs = sample_row_symmetric(model, rng)
            assignment = hungarian(costs)
            tour = patch(assignment, costs)
            ratios[t] = tour.cost / assignment.cost
            cycle_counts[t] = len(assignment.cycles)
            if n <= 13:
                optimal, _ = held_karp(costs)
                opt_ratios.append(tour.cost / optimal)
        rows.append(
            AtspRow(
                n=n,
                trials=trials,
                mean_tour_over_assignment=float(ratios.mean()) if trials else math.nan,
                se_tour_over_assignment=float(ratios.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan,
                mean_tour_over_optimal=float(np.mean(opt_ratios)) if opt_ratios else math.nan,
                mean_cycles=float(cycle_counts.mean()) if trials else math.nan,
                bound_M=float(max(beta.max(), 1.0 / beta.min())),
            )
        )
    return rows
