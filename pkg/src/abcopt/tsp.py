"""Symmetric Euclidean TSP adapted to the continuous optimizer via random keys.

A tour over n cities is encoded as a real vector of n keys in [0, 1]; the
ascending argsort of the keys (stable, so ties break by index) is the city
visiting order. That keeps the colony's neighbor move and the linear
crossover well defined while the objective stays the closed-tour length.
Small instances have an exhaustive-enumeration oracle for verification.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .benchmarks import BoxBounds, Problem
from .validation import as_float_vector, as_rng

__all__ = [
    "TspInstance",
    "Tour",
    "generate_instance",
    "save_instance",
    "load_instance",
    "decode_keys",
    "tour_length",
    "as_problem",
    "brute_force_optimum",
]

BRUTE_FORCE_MAX_CITIES = 10


@dataclass(frozen=True)
class TspInstance:
    """Planar cities with their full Euclidean distance matrix."""

    name: str
    cities: np.ndarray  # shape (n, 2)
    cost: np.ndarray  # shape (n, n), symmetric, zero diagonal
    seed: int | None = None

    @property
    def n_cities(self) -> int:
        return self.cities.shape[0]


@dataclass(frozen=True)
class Tour:
    """A closed visiting order and its length."""

    order: tuple[int, ...]
    length: float


def _cost_matrix(cities: np.ndarray) -> np.ndarray:
    diff = cities[:, None, :] - cities[None, :, :]
    return np.sqrt((diff**2).sum(axis=-1))


def _instance_from_cities(name: str, cities: np.ndarray, seed: int | None = None) -> TspInstance:
    cities = np.asarray(cities, dtype=float)
    if cities.ndim != 2 or cities.shape[1] != 2 or cities.shape[0] < 3:
        raise ValueError("cities must be an (n, 2) array with n >= 3")
    if not np.isfinite(cities).all():
        raise ValueError("city coordinates must be finite")
    return TspInstance(name=name, cities=cities, cost=_cost_matrix(cities), seed=seed)


def generate_instance(n: int, seed: int) -> TspInstance:
    """n cities drawn uniformly in [0, 100]^2, deterministic per seed."""
    if n < 3:
        raise ValueError(f"need at least 3 cities, got {n}")
    rng = as_rng(seed)
    cities = 100.0 * rng.random((n, 2))
    return _instance_from_cities(f"random-{n}-{seed}", cities, seed=seed)


def save_instance(inst: TspInstance, path) -> None:
    """Write the plain-text format: first line n, then one "x y" line per city."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{inst.n_cities}\n")
        for x, y in inst.cities:
            fh.write(f"{float(x)!r} {float(y)!r}\n")


def load_instance(path) -> TspInstance:
    """Read the plain-text format written by :func:`save_instance`."""
    with open(path, encoding="ascii") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValueError(f"{path}: empty instance file")
    n = int(tokens[0])
    coords = [float(t) for t in tokens[1:]]
    if len(coords) != 2 * n:
        raise ValueError(f"{path}: expected {2 * n} coordinates for {n} cities, got {len(coords)}")
    cities = np.array(coords, dtype=float).reshape(n, 2)
    return _instance_from_cities(str(path), cities)


def decode_keys(keys) -> np.ndarray:
    """Permutation that sorts the keys ascending; ties break by lower index."""
    keys = as_float_vector(keys, "keys")
    return np.argsort(keys, kind="stable")


def tour_length(order, inst: TspInstance) -> float:
    """Closed-tour cost, including the edge back to the start."""
    order = np.asarray(order)
    n = inst.n_cities
    if order.shape != (n,) or not np.array_equal(np.sort(order), np.arange(n)):
        raise ValueError("order must be a permutation of 0..n-1")
    return float(inst.cost[order, np.roll(order, -1)].sum())


def as_problem(inst: TspInstance) -> Problem:
    """Wrap the instance as an n-dimensional key-vector minimization problem."""
    cost = inst.cost

    def objective(keys: np.ndarray) -> float:
        order = np.argsort(keys, kind="stable")
        return float(cost[order, np.roll(order, -1)].sum())

    n = inst.n_cities
    return Problem(
        name=f"tsp-{inst.name}",
        dimension=n,
        bounds=BoxBounds(np.zeros(n), np.ones(n)),
        objective=objective,
        known_optimum=None,
    )


def brute_force_optimum(inst: TspInstance) -> Tour:
    """Exact optimum by enumerating all (n-1)!/2 distinct closed tours.

    City 0 is fixed as the start and reversed duplicates are skipped, so
    the search is exact yet refuses instances beyond 10 cities.
    """
    n = inst.n_cities
    if n > BRUTE_FORCE_MAX_CITIES:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_MAX_CITIES} cities, got {n}")
    cost = inst.cost
    best_order: tuple[int, ...] | None = None
    best_length = math.inf
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:  # each undirected tour once
            continue
        length = cost[0, rest[0]]
        for a, b in zip(rest, rest[1:]):
            length += cost[a, b]
        length += cost[rest[-1], 0]
        if length < best_length:
            best_length = length
            best_order = (0, *rest)
    assert best_order is not None
    return Tour(order=best_order, length=float(best_length))
