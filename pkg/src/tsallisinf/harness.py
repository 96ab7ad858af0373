"""Experiment harness: configs, runs, batches, aggregation, CSV output.

A batch is (environment, algorithm list, horizon, repetitions, base seed).
Run r of every algorithm uses seed base + r; each run derives independent
env/learner streams from its seed, so a run is reproducible from its CSV
row alone and results do not depend on how runs are scheduled.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import dueling as dueling_mod
from . import envs as envs_mod
from .baselines import Exp3Policy, ThompsonPolicy, Ucb1Policy
from .bounds import bound_thm1_adversarial, bound_thm1_self_bounding, bound_thm2_adversarial
from .core import GapVector, RegretTrace, checkpoint_grid
from .dueling import DuelSpec
from .envs import CorruptedSpec, EnvSpec, StochasticSpec, SwitchingSpec, gaps_of, make_env
from .rng import ROLE_ENV, ROLE_LEFT, ROLE_RIGHT, stream
from .tsallis import TsallisConfig, TsallisInfPolicy

RAW_HEADER = ("algorithm", "env", "seed", "t", "pseudo_regret")
AGGREGATE_HEADER = (
    "algorithm", "env", "t", "mean_pseudo_regret", "std_pseudo_regret", "n_runs"
)
BOUNDS_HEADER = ("t", "bound_name", "value")

_BLOCK = 4096

TSALLIS = "tsallis"
UCB1 = "ucb1"
THOMPSON = "thompson"
EXP3 = "exp3"
SPARRING = "sparring"
_KINDS = (TSALLIS, UCB1, THOMPSON, EXP3, SPARRING)


class ConfigError(ValueError):
    """Raised for malformed experiment configurations."""


@dataclass(frozen=True)
class AlgorithmConfig:
    id: str
    kind: str
    tsallis: Optional[TsallisConfig] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown algorithm kind {self.kind!r}")
        if self.kind in (TSALLIS, SPARRING) and self.tsallis is None:
            raise ConfigError(f"algorithm kind {self.kind!r} needs learner settings")


@dataclass(frozen=True)
class ExperimentConfig:
    env: Union[EnvSpec, DuelSpec]
    algorithms: Tuple[AlgorithmConfig, ...]
    horizon: int
    repetitions: int
    base_seed: int = 0
    out_dir: Optional[str] = None

    def __post_init__(self):
        if self.horizon < 1:
            raise ConfigError("horizon must be >= 1")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if self.base_seed < 0:
            raise ConfigError("base_seed must be >= 0")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        ids = [a.id for a in self.algorithms]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate algorithm ids: {sorted(ids)}")
        is_duel = isinstance(self.env, DuelSpec)
        for a in self.algorithms:
            if is_duel and a.kind != SPARRING:
                raise ConfigError("dueling environments require sparring algorithms")
            if not is_duel and a.kind == SPARRING:
                raise ConfigError("sparring algorithms require a dueling environment")

    @property
    def env_label(self) -> str:
        if isinstance(self.env, DuelSpec):
            return dueling_mod.env_label(self.env)
        return envs_mod.env_label(self.env)


@dataclass(frozen=True)
class RunFailure:
    algorithm: str
    seed: int
    message: str


@dataclass
class BatchResult:
    config: ExperimentConfig
    traces: List[RegretTrace] = field(default_factory=list)
    failures: List[RunFailure] = field(default_factory=list)


# -- config parsing ---------------------------------------------------------


def _require(data: dict, key: str, context: str):
    if key not in data:
        raise ConfigError(f"{context}: missing required field {key!r}")
    return data[key]


def parse_env(data: dict) -> Union[EnvSpec, DuelSpec]:
    if not isinstance(data, dict):
        raise ConfigError("env must be an object with a 'kind' tag")
    kind = _require(data, "kind", "env")
    try:
        if kind == "stochastic":
            return StochasticSpec(tuple(_require(data, "means", "env")))
        if kind == "experiment1":
            return envs_mod.experiment1(
                int(_require(data, "n_arms", "env")), float(_require(data, "gap", "env"))
            )
        if kind == "multi-optimal":
            return envs_mod.multi_optimal(int(_require(data, "n_arms", "env")))
        if kind == "switching":
            return SwitchingSpec(
                int(_require(data, "n_arms", "env")),
                float(_require(data, "gap", "env")),
                int(data.get("initial_phase_length", 10)),
                float(data.get("growth", 1.6)),
            )
        if kind == "corrupted":
            base = parse_env(_require(data, "base", "env"))
            if isinstance(base, (DuelSpec, CorruptedSpec)):
                raise ConfigError("corruption wraps a stochastic or switching base")
            return CorruptedSpec(
                base,
                float(_require(data, "budget", "env")),
                str(data.get("strategy", envs_mod.FLIP_BEST)),
            )
        if kind == "dueling":
            return DuelSpec(tuple(_require(data, "utilities", "env")))
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"env: {exc}") from exc
    raise ConfigError(f"env: unknown kind {kind!r}")


def _parse_tsallis(data: dict, env: Union[EnvSpec, DuelSpec]) -> TsallisConfig:
    oracle_gaps = data.get("oracle_gaps")
    schedule = str(data.get("schedule", "thm1"))
    if schedule == "thm3-oracle" and oracle_gaps is None:
        # Wire the true gaps in for the oracle schedule.
        if isinstance(env, DuelSpec):
            oracle_gaps = tuple(env.gaps())
        else:
            oracle_gaps = tuple(gaps_of(env).gaps)
    xi = data.get("xi")
    try:
        return TsallisConfig(
            alpha=float(data.get("alpha", 0.5)),
            estimator=str(data.get("estimator", "rv")),
            schedule=schedule,
            xi=None if xi is None else tuple(xi),
            oracle_gaps=None if oracle_gaps is None else tuple(oracle_gaps),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"algorithm: {exc}") from exc


def parse_algorithm(data: dict, env: Union[EnvSpec, DuelSpec]) -> AlgorithmConfig:
    if not isinstance(data, dict):
        raise ConfigError("algorithm must be an object with a 'kind' tag")
    kind = _require(data, "kind", "algorithm")
    if kind in (TSALLIS, SPARRING):
        ts = _parse_tsallis(data, env)
        default_id = f"{kind}-{ts.estimator}"
        return AlgorithmConfig(str(data.get("id", default_id)), kind, ts)
    if kind in (UCB1, THOMPSON, EXP3):
        return AlgorithmConfig(str(data.get("id", kind)), kind)
    raise ConfigError(f"algorithm: unknown kind {kind!r}")


def parse_config(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    env = parse_env(_require(data, "env", "config"))
    algos_data = _require(data, "algorithms", "config")
    if not isinstance(algos_data, list) or not algos_data:
        raise ConfigError("config: 'algorithms' must be a non-empty list")
    algorithms = tuple(parse_algorithm(a, env) for a in algos_data)
    try:
        horizon = int(_require(data, "horizon", "config"))
        repetitions = int(_require(data, "repetitions", "config"))
        base_seed = int(data.get("base_seed", 0))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config: {exc}") from exc
    out_dir = data.get("out")
    return ExperimentConfig(
        env, algorithms, horizon, repetitions, base_seed,
        None if out_dir is None else str(out_dir),
    )


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(data)


# -- single runs ------------------------------------------------------------


def make_policy(algo: AlgorithmConfig, n_arms: int):
    if algo.kind == TSALLIS:
        return TsallisInfPolicy(algo.tsallis, n_arms)
    if algo.kind == UCB1:
        return Ucb1Policy(n_arms)
    if algo.kind == THOMPSON:
        return ThompsonPolicy(n_arms)
    if algo.kind == EXP3:
        return Exp3Policy(n_arms)
    raise ConfigError(f"no single-bandit policy for kind {algo.kind!r}")


def _trace(algo_id: str, env_label: str, seed: int, horizon: int,
           grid: np.ndarray, checkpoints: list, total: float) -> RegretTrace:
    return RegretTrace(
        algorithm=algo_id, env=env_label, seed=seed, horizon=horizon,
        grid=grid, checkpoints=checkpoints,
        _running=total, _last_t=horizon, _next_idx=len(grid),
    )


def run_single(
    env_spec: Union[EnvSpec, DuelSpec],
    algo: AlgorithmConfig,
    horizon: int,
    seed: int,
) -> RegretTrace:
    """One run; deterministic given (env_spec, algo, horizon, seed)."""
    if isinstance(env_spec, DuelSpec):
        return _run_sparring(env_spec, algo, horizon, seed)
    return _run_bandit(env_spec, algo, horizon, seed)


def _run_bandit(env_spec: EnvSpec, algo: AlgorithmConfig, horizon: int, seed: int) -> RegretTrace:
    env = make_env(env_spec)
    gaps = gaps_of(env_spec).gaps.tolist()
    policy = make_policy(algo, env.n_arms)
    env_rng = stream(seed, algo.id, ROLE_ENV)
    learner_rng = stream(seed, algo.id, ROLE_LEFT)
    batched = hasattr(policy, "select_with")

    grid = checkpoint_grid(horizon)
    grid_list = [int(g) for g in grid]
    next_idx = 0
    next_cp = grid_list[0] if grid_list else 0
    checkpoints: list = []
    running = 0.0

    t = 0
    while t < horizon:
        n = min(_BLOCK, horizon - t)
        losses = env.sample_block(t + 1, n, env_rng)
        draws = learner_rng.random(n) if batched else None
        for k in range(n):
            t += 1
            if batched:
                arm = policy.select_with(draws[k])
            else:
                arm = policy.select(learner_rng)
            policy.update(arm, float(losses[k, arm]), learner_rng)
            running += gaps[arm]
            if t == next_cp:
                checkpoints.append((t, running))
                next_idx += 1
                next_cp = grid_list[next_idx] if next_idx < len(grid_list) else 0
    label = envs_mod.env_label(env_spec)
    return _trace(algo.id, label, seed, horizon, grid, checkpoints, running)


def _run_sparring(spec: DuelSpec, algo: AlgorithmConfig, horizon: int, seed: int) -> RegretTrace:
    """Self-play: two independent learners, complementary 0/1 losses."""
    left = TsallisInfPolicy(algo.tsallis, spec.n_arms)
    right = TsallisInfPolicy(algo.tsallis, spec.n_arms)
    env_rng = stream(seed, algo.id, ROLE_ENV)
    left_rng = stream(seed, algo.id, ROLE_LEFT)
    right_rng = stream(seed, algo.id, ROLE_RIGHT)

    utilities = list(spec.utilities)
    u_max = max(utilities)
    grid = checkpoint_grid(horizon)
    grid_list = [int(g) for g in grid]
    next_idx = 0
    next_cp = grid_list[0] if grid_list else 0
    checkpoints: list = []
    running = 0.0

    t = 0
    while t < horizon:
        n = min(_BLOCK, horizon - t)
        duel_draws = env_rng.random(n)
        left_draws = left_rng.random(n)
        right_draws = right_rng.random(n)
        for k in range(n):
            t += 1
            i = left.select_with(left_draws[k])
            j = right.select_with(right_draws[k])
            p_left = (1.0 + utilities[i] - utilities[j]) / 2.0
            loss_left = 0.0 if duel_draws[k] < p_left else 1.0
            left.update(i, loss_left)
            right.update(j, 1.0 - loss_left)
            running += 2.0 * u_max - utilities[i] - utilities[j]
            if t == next_cp:
                checkpoints.append((t, running))
                next_idx += 1
                next_cp = grid_list[next_idx] if next_idx < len(grid_list) else 0
    label = dueling_mod.env_label(spec)
    return _trace(algo.id, label, seed, horizon, grid, checkpoints, running)


# -- batches ----------------------------------------------------------------


def _run_task(args) -> tuple:
    config, algo_idx, run_idx = args
    algo = config.algorithms[algo_idx]
    seed = config.base_seed + run_idx
    try:
        trace = run_single(config.env, algo, config.horizon, seed)
        return ("ok", algo_idx, run_idx, trace)
    except Exception as exc:  # noqa: BLE001 - a failed run must not kill the batch
        return ("error", algo_idx, run_idx, f"{type(exc).__name__}: {exc}")


def run_batch(config: ExperimentConfig, threads: int = 1) -> BatchResult:
    """Run every (algorithm, repetition) pair.

    Results are identical for any thread count; failed runs are reported
    and skipped in aggregation.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    tasks = [
        (config, algo_idx, run_idx)
        for algo_idx in range(len(config.algorithms))
        for run_idx in range(config.repetitions)
    ]
    if threads == 1:
        outcomes = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_run_task, tasks))

    result = BatchResult(config)
    for status, algo_idx, run_idx, payload in outcomes:
        if status == "ok":
            result.traces.append(payload)
        else:
            result.failures.append(
                RunFailure(config.algorithms[algo_idx].id, config.base_seed + run_idx, payload)
            )
    return result


@dataclass(frozen=True)
class AggregateRow:
    algorithm: str
    env: str
    t: int
    mean: float
    std: float
    n_runs: int


def aggregate(traces: Sequence[RegretTrace]) -> List[AggregateRow]:
    """Per-checkpoint mean and population std across runs."""
    groups: dict = {}
    order: list = []
    for trace in traces:
        key = (trace.algorithm, trace.env)
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(trace)
    rows: List[AggregateRow] = []
    for key in order:
        group = groups[key]
        grid = group[0].grid
        values = np.array([[v for _, v in tr.checkpoints] for tr in group])
        if values.shape[1] != len(grid):
            raise ValueError("traces in one group must share the checkpoint grid")
        means = values.mean(axis=0)
        stds = values.std(axis=0)  # population std
        for col, t in enumerate(grid):
            rows.append(
                AggregateRow(key[0], key[1], int(t), float(means[col]), float(stds[col]), len(group))
            )
    return rows


# -- CSV output -------------------------------------------------------------


def write_raw_csv(path: Union[str, Path], traces: Sequence[RegretTrace]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RAW_HEADER)
        for trace in traces:
            for t, value in trace.checkpoints:
                writer.writerow([trace.algorithm, trace.env, trace.seed, t, repr(value)])


def write_aggregate_csv(path: Union[str, Path], rows: Sequence[AggregateRow]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATE_HEADER)
        for row in rows:
            writer.writerow(
                [row.algorithm, row.env, row.t, repr(row.mean), repr(row.std), row.n_runs]
            )


def reference_bounds(config: ExperimentConfig) -> List[Tuple[int, str, float]]:
    """Reference curves matching the configured env and learners."""
    grid = checkpoint_grid(config.horizon)
    env = config.env
    if isinstance(env, DuelSpec):
        n_arms = env.n_arms
        gaps: Optional[GapVector] = GapVector(env.gaps())
        corruption = 0.0
    else:
        n_arms = env.n_arms
        gaps = gaps_of(env)
        corruption = 2.0 * env.budget if isinstance(env, CorruptedSpec) else 0.0

    names: List[Tuple[str, str]] = [("thm1-adversarial-iw", "iw"), ("thm1-adversarial-rv", "rv")]
    rows: List[Tuple[int, str, float]] = []
    for t in grid:
        for name, est in names:
            rows.append((int(t), name, bound_thm1_adversarial(n_arms, int(t), est)))
        if gaps is not None and gaps.unique_optimum:
            for est in ("iw", "rv"):
                rows.append((
                    int(t),
                    f"thm1-self-bounding-{est}-c{corruption:g}",
                    bound_thm1_self_bounding(gaps, int(t), corruption, est),
                ))
        for alpha in sorted({a.tsallis.alpha for a in config.algorithms if a.tsallis}):
            rows.append((
                int(t),
                f"thm2-adversarial-alpha{alpha:g}",
                bound_thm2_adversarial(n_arms, int(t), alpha),
            ))
    return rows


def write_bounds_csv(path: Union[str, Path], config: ExperimentConfig) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(BOUNDS_HEADER)
        for t, name, value in reference_bounds(config):
            writer.writerow([t, name, repr(value)])
