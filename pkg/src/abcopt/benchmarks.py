"""Bounded continuous minimization problems and the four classic benchmarks.

Each benchmark is a pure function of a 1-D real vector. All four have a
known global minimum of 0 (at the origin, except rosenbrock at all-ones)
and are served with their conventional box bounds through
:func:`benchmark_problem`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .validation import as_float_vector

__all__ = [
    "BoxBounds",
    "Problem",
    "sphere",
    "griewank",
    "rastrigin",
    "rosenbrock",
    "in_bounds",
    "benchmark_problem",
    "BENCHMARK_NAMES",
]


@dataclass(frozen=True)
class BoxBounds:
    """Per-dimension lower/upper limits of a search box."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float)
        upper = np.asarray(self.upper, dtype=float)
        if lower.ndim != 1 or upper.ndim != 1 or lower.size != upper.size:
            raise ValueError("lower and upper must be 1-D arrays of equal length")
        if lower.size < 1:
            raise ValueError("bounds need at least one dimension")
        if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
            raise ValueError("bounds must be finite")
        if not (lower < upper).all():
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def symmetric(cls, half_width: float, dimension: int) -> "BoxBounds":
        """Box [-half_width, half_width] in every dimension."""
        return cls(np.full(dimension, -float(half_width)), np.full(dimension, float(half_width)))

    @property
    def dimension(self) -> int:
        return self.lower.size

    def clamp(self, x: np.ndarray) -> np.ndarray:
        """Clip each out-of-range component to the violated bound."""
        return np.clip(x, self.lower, self.upper)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """Draw lower + u * (upper - lower) with a fresh uniform u per component."""
        u = rng.random(self.dimension)
        return self.lower + u * (self.upper - self.lower)


@dataclass(frozen=True)
class Problem:
    """A minimization problem over a bounded box.

    ``objective`` must be deterministic and return a finite float for any
    in-bounds vector.
    """

    name: str
    dimension: int
    bounds: BoxBounds
    objective: Callable[[np.ndarray], float]
    known_optimum: float | None = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.bounds.dimension != self.dimension:
            raise ValueError(
                f"bounds dimension {self.bounds.dimension} != problem dimension {self.dimension}"
            )

    def evaluate(self, x: np.ndarray) -> float:
        return float(self.objective(x))


def sphere(x) -> float:
    """Sum of squared components. Minimum 0 at the origin."""
    x = as_float_vector(x)
    return float(x @ x)


def griewank(x) -> float:
    """(1/4000) * sum(x_i^2) - prod(cos(x_i / sqrt(i))) + 1, i counted from 1."""
    x = as_float_vector(x)
    i = np.arange(1, x.size + 1, dtype=float)
    return float((x @ x) / 4000.0 - np.cos(x / np.sqrt(i)).prod() + 1.0)


def rastrigin(x) -> float:
    """sum(x_i^2 - 10*cos(2*pi*x_i) + 10). Minimum 0 at the origin."""
    x = as_float_vector(x)
    return float((x @ x) - 10.0 * np.cos(2.0 * np.pi * x).sum() + 10.0 * x.size)


def rosenbrock(x) -> float:
    """sum over i < D of 100*(x_i^2 - x_{i+1})^2 + (1 - x_i)^2.

    Needs at least two dimensions; the sum runs to D-1 so the x_{i+1}
    term stays in range. Minimum 0 at all-ones.
    """
    x = as_float_vector(x, "x")
    if x.size < 2:
        raise ValueError("rosenbrock needs a vector of length >= 2")
    head, tail = x[:-1], x[1:]
    return float((100.0 * (head**2 - tail) ** 2 + (1.0 - head) ** 2).sum())


def in_bounds(x, bounds: BoxBounds) -> bool:
    """True iff lower[j] <= x[j] <= upper[j] for all j (boundaries inclusive)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != bounds.dimension:
        raise ValueError(f"x has shape {x.shape}, expected ({bounds.dimension},)")
    return bool((x >= bounds.lower).all() and (x <= bounds.upper).all())


# name -> (objective, half-width of the conventional box, minimum dimension)
_BENCHMARKS: dict[str, tuple[Callable, float, int]] = {
    "sphere": (sphere, 100.0, 1),
    "griewank": (griewank, 600.0, 1),
    "rastrigin": (rastrigin, 5.12, 1),
    "rosenbrock": (rosenbrock, 30.0, 2),
}

BENCHMARK_NAMES = tuple(_BENCHMARKS)


def benchmark_problem(name: str, dimension: int) -> Problem:
    """Look up a benchmark by name and wrap it with its conventional bounds."""
    try:
        func, half_width, min_dim = _BENCHMARKS[name]
    except KeyError:
        raise ValueError(f"unknown benchmark {name!r}; choose from {BENCHMARK_NAMES}") from None
    if dimension < min_dim:
        raise ValueError(f"{name} needs dimension >= {min_dim}")
    return Problem(
        name=name,
        dimension=dimension,
        bounds=BoxBounds.symmetric(half_width, dimension),
        objective=func,
        known_optimum=0.0,
    )
