"""Linear (midpoint + two extrapolations) crossover and its colony phase.

The operator builds three offspring from two parents p, q:

    c1 = 0.5*(p + q)        componentwise midpoint
    c2 = 1.5*p - 0.5*q      extrapolation past p
    c3 = -0.5*p + 1.5*q     extrapolation past q

so c2 + c3 == p + q componentwise (up to rounding). The phase runs right
after the employed-bee phase: one Bernoulli gate per food-source slot, and
on a hit two distinct random parents produce the three offspring, all
evaluated, with the best offspring replacing the configured target parent
only on strict fitness improvement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .benchmarks import BoxBounds, Problem
from .colony import AbcConfig, Swarm, FoodSource, _partner_index, fitness_of

__all__ = [
    "CrossoverOutcome",
    "linear_offspring",
    "linear_crossover",
    "crossover_event",
    "crossover_phase",
]


@dataclass(frozen=True)
class CrossoverOutcome:
    """The three clamped offspring, which one won, and whether it replaced a parent."""

    candidates: tuple[np.ndarray, np.ndarray, np.ndarray]
    chosen: int
    applied: bool


def linear_offspring(p1, p2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Raw (unclamped) midpoint and the two extrapolated offspring."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError(f"parent shapes differ: {p1.shape} vs {p2.shape}")
    return 0.5 * (p1 + p2), 1.5 * p1 - 0.5 * p2, -0.5 * p1 + 1.5 * p2


def linear_crossover(p1, p2, bounds: BoxBounds) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three offspring clamped componentwise to the box.

    The midpoint of in-bounds parents is in bounds already (the box is
    convex); clamping only ever moves the extrapolated pair.
    """
    c1, c2, c3 = linear_offspring(p1, p2)
    if c1.size != bounds.dimension:
        raise ValueError(f"parents have dimension {c1.size}, bounds {bounds.dimension}")
    return c1, bounds.clamp(c2), bounds.clamp(c3)


def crossover_event(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, a: int, b: int
) -> CrossoverOutcome:
    """Cross parents a and b: evaluate all three offspring, replace on strict gain.

    Costs three evaluations. The replacement target is the worse of the two
    parents, or the population-wide worst source under
    ``replacement="population-worst"``. Failed replacement leaves every
    trial counter untouched; success resets the target's counter.
    """
    sources = swarm.sources
    candidates = linear_crossover(sources[a].position, sources[b].position, problem.bounds)
    values = [swarm.evaluate(problem, c, cfg) for c in candidates]
    fits = [fitness_of(v) for v in values]
    chosen = max(range(3), key=lambda i: fits[i])
    if cfg.replacement == "pair-worst":
        target = a if sources[a].fitness < sources[b].fitness else b
    else:
        target = min(range(len(sources)), key=lambda i: sources[i].fitness)
    applied = fits[chosen] > sources[target].fitness
    if applied:
        sources[target] = FoodSource(candidates[chosen], values[chosen], fits[chosen])
    return CrossoverOutcome(candidates, chosen, applied)


def crossover_phase(
    swarm: Swarm, problem: Problem, cfg: AbcConfig, rng: np.random.Generator
) -> Swarm:
    """One gated crossover opportunity per food-source slot.

    Draw order per slot: one uniform for the gate; when it falls below
    ``crossover_probability``, the first parent index then a distinct
    second. A failed gate consumes nothing beyond its single uniform, so a
    zero-probability phase performs no evaluations at all.
    """
    sn = cfg.sn
    pr = cfg.crossover_probability
    for _ in range(sn):
        if rng.random() >= pr:
            continue
        a = int(rng.integers(sn))
        b = _partner_index(a, sn, rng)
        crossover_event(swarm, problem, cfg, a, b)
    return swarm
