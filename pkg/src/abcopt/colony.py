"""Artificial bee colony core: swarm state, the three bee phases, and the run loop.

The colony keeps ``sn`` food sources. Each cycle runs the employed-bee
phase over the first ``n_employed`` sources, optionally a crossover phase
(see :mod:`abcopt.crossover`), the onlooker-bee phase (fitness-proportional
source choice), and the scout phase (re-seed the single most-stale source).
Best-so-far memory and the evaluation counter are maintained inside
:meth:`Swarm.evaluate`, so every objective call is accounted for exactly
once and the best memory reflects every point ever evaluated.

Randomness is drawn from a ``numpy.random.Generator`` using only scalar
uniforms (``rng.random()``) and bounded integers (``rng.integers``), in a
documented order, so runs are reproducible from a single seed and tests
can script the stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .benchmarks import BoxBounds, Problem
from .validation import as_rng, check_option, check_positive_int

__all__ = [
    "AbcConfig",
    "FoodSource",
    "Swarm",
    "RunResult",
    "BudgetExhausted",
    "fitness_of",
    "selection_probabilities",
    "roulette_pick",
    "neighbor",
    "init_swarm",
    "employed_phase",
    "onlooker_phase",
    "scout_phase",
    "run",
    "random_search",
]

VARIANTS = ("abc", "cbabc")
REPLACEMENT_MODES = ("pair-worst", "population-worst")


class BudgetExhausted(Exception):
    """Raised by :meth:`Swarm.evaluate` when the evaluation budget is spent.

    Control flow only: :func:`run` catches it and terminates the run
    cleanly. Code driving phases by hand must do the same.
    """


@dataclass(frozen=True)
class AbcConfig:
    """Colony parameters.

    ``sn`` counts food sources; per cycle there are
    ``round(sn * employed_fraction)`` employed-bee updates (assigned to the
    lowest-index sources) and ``sn - n_employed`` onlooker updates. A source
    unimproved for more than ``limit`` attempts is abandoned by the scout.
    Both ``max_cycles`` and ``eval_budget`` terminate a run, whichever binds
    first. ``crossover_probability`` is the per-slot gate rate of the
    crossover phase and requires ``variant="cbabc"``.
    """

    sn: int = 20
    limit: int = 100
    max_cycles: int = 2000
    eval_budget: int = 20000
    crossover_probability: float = 0.0
    variant: str = "abc"
    employed_fraction: float = 0.5
    replacement: str = "pair-worst"
    seed: int = 0

    def __post_init__(self):
        check_positive_int("sn", self.sn, minimum=2)
        check_positive_int("limit", self.limit)
        check_positive_int("max_cycles", self.max_cycles, minimum=0)
        check_positive_int("eval_budget", self.eval_budget, minimum=self.sn)
        check_option("variant", self.variant, VARIANTS)
        check_option("replacement", self.replacement, REPLACEMENT_MODES)
        pr = self.crossover_probability
        if not (isinstance(pr, (int, float)) and math.isfinite(pr) and 0.0 <= pr <= 1.0):
            raise ValueError(f"crossover_probability must be in [0, 1], got {pr!r}")
        if self.variant == "abc" and pr != 0.0:
            raise ValueError("crossover_probability > 0 requires variant='cbabc'")
        if not 0.0 <= self.employed_fraction <= 1.0:
            raise ValueError(f"employed_fraction must be in [0, 1], got {self.employed_fraction!r}")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")

    @property
    def n_employed(self) -> int:
        return int(round(self.sn * self.employed_fraction))

    @property
    def n_onlookers(self) -> int:
        return self.sn - self.n_employed


@dataclass
class FoodSource:
    """One candidate solution with its quality and staleness counter."""

    position: np.ndarray
    objective: float
    fitness: float
    trials: int = 0


@dataclass
class Swarm:
    """Mutable run state: the sources plus best-so-far and eval accounting."""

    sources: list[FoodSource] = field(default_factory=list)
    best_position: np.ndarray | None = None
    best_objective: float = math.inf
    evaluations: int = 0
    cycle: int = 0
    success_threshold: float | None = None
    success_at: int | None = None

    def evaluate(self, problem: Problem, x: np.ndarray, cfg: AbcConfig) -> float:
        """Call the objective once, with budget check and best/success tracking."""
        if self.evaluations >= cfg.eval_budget:
            raise BudgetExhausted
        value = float(problem.objective(x))
        self.evaluations += 1
        if value < self.best_objective:
            self.best_objective = value
            self.best_position = x.copy()
        if (
            self.success_at is None
            and self.success_threshold is not None
            and value <= self.success_threshold
        ):
            self.success_at = self.evaluations
        return value


@dataclass(frozen=True)
class RunResult:
    """Outcome of one optimizer run.

    ``trace`` holds the best objective after initialization, after each
    completed cycle, and (when the budget ran out mid-cycle) one final
    entry, so ``trace[-1] == best_objective`` always. A run that never
    reached ``success_threshold`` reports ``evaluations_to_success`` equal
    to the configured budget; ``success_at`` is then ``None``.
    """

    best_objective: float
    best_position: np.ndarray
    evaluations: int
    evaluations_to_success: int
    success_at: int | None
    trace: np.ndarray
    cycles: int
    seed: int


def fitness_of(objective_value: float) -> float:
    """Map an objective value to a strictly positive, strictly decreasing fitness.

    1/(1+f) for f >= 0, else 1 + |f|.
    """
    f = float(objective_value)
    if not math.isfinite(f):
        raise ValueError(f"objective value must be finite, got {f!r}")
    return 1.0 / (1.0 + f) if f >= 0.0 else 1.0 + abs(f)


def selection_probabilities(swarm: Swarm) -> np.ndarray:
    """P_i = fit_i / sum(fit): each in (0, 1], summing to 1."""
    fits = np.array([s.fitness for s in swarm.sources], dtype=float)
    return fits / fits.sum()


def roulette_pick(probabilities: np.ndarray, rng: np.random.Generator) -> int:
    """Fitness-proportional index draw; consumes exactly one uniform."""
    u = rng.random()
    idx = int(np.searchsorted(np.cumsum(probabilities), u, side="right"))
    return min(idx, len(probabilities) - 1)


def _partner_index(i: int, sn: int, rng: np.random.Generator) -> int:
    # Uniform over the other sn-1 sources without rejection sampling.
    k = int(rng.integers(sn - 1))
    return k if k < i else k + 1


def neighbor(
    source_index: int, swarm: Swarm, bounds: BoxBounds, rng: np.random.Generator
) -> np.ndarray:
    """Step-size move: copy the source, perturb one dimension toward/away a partner.

    Draw order: dimension j, partner k != i, then u for phi = 2u - 1 in
    [-1, 1). The perturbed component x_ij + phi * (x_ij - x_kj) is clamped
    to the bounds.
    """
    sn = len(swarm.sources)
    if sn < 2:
        raise ValueError("a neighbor move needs at least two food sources")
    x = swarm.sources[source_index].position
    j = int(rng.integers(x.size))
    k = _partner_index(source_index, sn, rng)
    phi = 2.0 * rng.random() - 1.0
    v = x.copy()
    moved = x[j] + phi * (x[j] - swarm.sources[k].position[j])
    v[j] = min(max(moved, bounds.lower[j]), bounds.upper[j])
    return v


def init_swarm(
    problem: Problem,
    cfg: AbcConfig,
    rng: np.random.Generator,
    success_threshold: float | None = None,
) -> Swarm:
    """Draw sn sources uniformly in the box; costs sn evaluations."""
    swarm = Swarm(success_threshold=success_threshold)
    for _ in range(cfg.sn):
        position = problem.bounds.sample(rng)
        value = swarm.evaluate(problem, position, cfg)
        swarm.sources.append(FoodSource(position, value, fitness_of(value)))
    return swarm


def _attempt_improvement(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, i: int, rng: np.random.Generator
) -> None:
    # One neighbor candidate with greedy selection: replace the source only
    # on strictly greater fitness, otherwise count a failed trial.
    candidate = neighbor(i, swarm, problem.bounds, rng)
    value = swarm.evaluate(problem, candidate, cfg)
    fitness = fitness_of(value)
    source = swarm.sources[i]
    if fitness > source.fitness:
        source.position = candidate
        source.objective = value
        source.fitness = fitness
        source.trials = 0
    else:
        source.trials += 1


def employed_phase(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, rng: np.random.Generator
) -> Swarm:
    """One neighbor attempt for each of the first n_employed sources."""
    for i in range(cfg.n_employed):
        _attempt_improvement(swarm, problem, cfg, i, rng)
    return swarm


def onlooker_phase(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, rng: np.random.Generator
) -> Swarm:
    """n_onlookers roulette-selected neighbor attempts.

    Selection probabilities are computed once at phase start, as in the
    classic colony; each onlooker consumes one uniform for the roulette
    draw plus the neighbor-move draws.
    """
    if cfg.n_onlookers == 0:
        return swarm
    probabilities = selection_probabilities(swarm)
    for _ in range(cfg.n_onlookers):
        i = roulette_pick(probabilities, rng)
        _attempt_improvement(swarm, problem, cfg, i, rng)
    return swarm


def scout_phase(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, rng: np.random.Generator
) -> Swarm:
    """Re-seed at most one abandoned source per cycle.

    Among sources with trials > limit the one with the most trials (lowest
    index on ties) is redrawn uniformly in the box with trials reset; the
    best-so-far memory is untouched.
    """
    stale = [i for i, s in enumerate(swarm.sources) if s.trials > cfg.limit]
    if not stale:
        return swarm
    i = max(stale, key=lambda idx: (swarm.sources[idx].trials, -idx))
    position = problem.bounds.sample(rng)
    value = swarm.evaluate(problem, position, cfg)
    swarm.sources[i] = FoodSource(position, value, fitness_of(value))
    return swarm


def run(problem: Problem, cfg: AbcConfig, success_threshold: float | None = None) -> RunResult:
    """Run the colony until max_cycles or the evaluation budget, whichever first.

    Cycle order: employed -> crossover (cbabc only) -> onlooker -> scout ->
    memorize. Identical (problem, cfg) pairs produce identical results.
    """
    from .crossover import crossover_phase  # here to avoid an import cycle

    rng = as_rng(cfg.seed)
    swarm = init_swarm(problem, cfg, rng, success_threshold)
    trace = [swarm.best_objective]
    try:
        while swarm.cycle < cfg.max_cycles and swarm.evaluations < cfg.eval_budget:
            employed_phase(swarm, problem, cfg, rng)
            if cfg.variant == "cbabc":
                crossover_phase(swarm, problem, cfg, rng)
            onlooker_phase(swarm, problem, cfg, rng)
            scout_phase(swarm, problem, cfg, rng)
            swarm.cycle += 1
            trace.append(swarm.best_objective)
    except BudgetExhausted:
        trace.append(swarm.best_objective)
    return _result(swarm, cfg, trace)


def random_search(
    problem: Problem, cfg: AbcConfig, success_threshold: float | None = None
) -> RunResult:
    """Uniform-sampling baseline under the same budget/trace accounting.

    Each trace step covers a batch of sn fresh uniform draws (the last
    batch may be short when the budget runs out), capped by max_cycles
    batches after the initial one.
    """
    rng = as_rng(cfg.seed)
    swarm = Swarm(success_threshold=success_threshold)
    trace: list[float] = []
    try:
        for _ in range(cfg.sn):
            swarm.evaluate(problem, problem.bounds.sample(rng), cfg)
        trace.append(swarm.best_objective)
        while swarm.cycle < cfg.max_cycles and swarm.evaluations < cfg.eval_budget:
            for _ in range(cfg.sn):
                swarm.evaluate(problem, problem.bounds.sample(rng), cfg)
            swarm.cycle += 1
            trace.append(swarm.best_objective)
    except BudgetExhausted:
        trace.append(swarm.best_objective)
    return _result(swarm, cfg, trace)


def _result(swarm: Swarm, cfg: AbcConfig, trace: list[float]) -> RunResult:
    return RunResult(
        best_objective=swarm.best_objective,
        best_position=swarm.best_position.copy(),
        evaluations=swarm.evaluations,
        evaluations_to_success=(
            swarm.success_at if swarm.success_at is not None else cfg.eval_budget
        ),
        success_at=swarm.success_at,
        trace=np.asarray(trace),
        cycles=swarm.cycle,
        seed=cfg.seed,
    )
