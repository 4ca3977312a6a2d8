"""Scikit-learn style estimator wrappers around the optimizer runs.

Both estimators are fit-only: ``fit(problem)`` runs the optimizer on a
:class:`~abcopt.benchmarks.Problem` and exposes the outcome through
trailing-underscore attributes. Inheriting ``BaseEstimator`` provides
``get_params``/``set_params``/``clone`` so the optimizers drop into
parameter sweeps and pipelines like any other estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .benchmarks import Problem
from .colony import AbcConfig, RunResult, random_search, run

__all__ = ["ArtificialBeeColony", "RandomSearch"]


def _materialize_seed(random_state) -> int:
    if random_state is None:
        return int(np.random.SeedSequence().entropy % (2**63))
    return int(random_state)


class ArtificialBeeColony(BaseEstimator):
    """Bee-colony minimizer over a bounded box.

    Parameters mirror :class:`~abcopt.colony.AbcConfig`;
    ``variant="cbabc"`` enables the gated linear-crossover phase with rate
    ``crossover_probability``. With ``random_state=None`` every fit draws a
    fresh seed; pass an integer for reproducible runs.

    Attributes after ``fit``: ``best_position_``, ``best_objective_``,
    ``trace_``, ``n_evaluations_``, ``n_cycles_``,
    ``evaluations_to_success_``, ``result_``, ``config_``.
    """

    def __init__(
        self,
        sn=20,
        limit=100,
        max_cycles=2000,
        eval_budget=20000,
        variant="abc",
        crossover_probability=0.0,
        employed_fraction=0.5,
        replacement="pair-worst",
        success_threshold=None,
        random_state=None,
    ):
        self.sn = sn
        self.limit = limit
        self.max_cycles = max_cycles
        self.eval_budget = eval_budget
        self.variant = variant
        self.crossover_probability = crossover_probability
        self.employed_fraction = employed_fraction
        self.replacement = replacement
        self.success_threshold = success_threshold
        self.random_state = random_state

    def _config(self) -> AbcConfig:
        return AbcConfig(
            sn=self.sn,
            limit=self.limit,
            max_cycles=self.max_cycles,
            eval_budget=self.eval_budget,
            crossover_probability=self.crossover_probability,
            variant=self.variant,
            employed_fraction=self.employed_fraction,
            replacement=self.replacement,
            seed=_materialize_seed(self.random_state),
        )

    def fit(self, problem: Problem, y=None):
        """Run the colony on the problem; returns self."""
        if not isinstance(problem, Problem):
            raise TypeError(f"fit expects a Problem, got {type(problem).__name__}")
        self.config_ = self._config()
        self.result_ = run(problem, self.config_, self.success_threshold)
        self._expose(self.result_)
        return self

    def _expose(self, result: RunResult) -> None:
        self.best_position_ = result.best_position
        self.best_objective_ = result.best_objective
        self.trace_ = result.trace
        self.n_evaluations_ = result.evaluations
        self.n_cycles_ = result.cycles
        self.evaluations_to_success_ = result.evaluations_to_success


class RandomSearch(ArtificialBeeColony):
    """Uniform-sampling baseline with the colony's budget and trace accounting."""

    def __init__(
        self,
        sn=20,
        max_cycles=2000,
        eval_budget=20000,
        success_threshold=None,
        random_state=None,
    ):
        super().__init__(
            sn=sn,
            max_cycles=max_cycles,
            eval_budget=eval_budget,
            success_threshold=success_threshold,
            random_state=random_state,
        )

    def fit(self, problem: Problem, y=None):
        if not isinstance(problem, Problem):
            raise TypeError(f"fit expects a Problem, got {type(problem).__name__}")
        self.config_ = self._config()
        self.result_ = random_search(problem, self.config_, self.success_threshold)
        self._expose(self.result_)
        return self
