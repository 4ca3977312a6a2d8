"""Seeded multi-run experiment campaigns with comparison tables and CSV output.

A campaign runs several algorithms on one problem for a fixed number of
independent runs each. Run r of algorithm a is seeded by a stable hash of
(master seed, algorithm label, r), so campaigns are reproducible byte for
byte regardless of how runs are scheduled, including in parallel.

Reported statistics per algorithm: the mean and standard deviation of the
final best objective over runs, the mean and standard deviation of
evaluations-to-success (saturating at the evaluation budget for runs that
never reach the threshold), and the per-cycle mean best curve.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .benchmarks import Problem
from .colony import AbcConfig, RunResult, random_search, run

__all__ = [
    "AlgorithmSpec",
    "CampaignConfig",
    "AlgoStats",
    "CampaignStats",
    "derive_seed",
    "run_campaign",
    "compare_table",
    "write_comparison_csv",
    "cycle_grid_values",
    "tsp_grid_table",
    "write_tsp_grid_csv",
    "emit_plot_data",
    "UNBOUNDED_BUDGET",
]

ALGORITHM_KINDS = ("abc", "cbabc", "random")

# Effectively removes the evaluation cap so the cycle count alone governs
# termination (used by the TSP cycle-grid protocol).
UNBOUNDED_BUDGET = 2**62


def _format_objective(x: float) -> str:
    # objective-valued cells: scientific notation, 6 significant digits
    return f"{float(x):.5e}"


def _format_evals(x: float) -> str:
    return f"{float(x):.1f}"


@dataclass(frozen=True)
class AlgorithmSpec:
    """One algorithm column of a campaign."""

    kind: str  # "abc" | "cbabc" | "random"
    pr: float = 0.0  # crossover probability, cbabc only

    def __post_init__(self):
        if self.kind not in ALGORITHM_KINDS:
            raise ValueError(f"kind must be one of {ALGORITHM_KINDS}, got {self.kind!r}")
        if self.kind != "cbabc" and self.pr != 0.0:
            raise ValueError("pr is only meaningful for kind='cbabc'")

    @property
    def label(self) -> str:
        return f"cbabc@{self.pr:g}" if self.kind == "cbabc" else self.kind


@dataclass(frozen=True)
class CampaignConfig:
    """Full description of one campaign."""

    problem: Problem
    algorithms: tuple[AlgorithmSpec, ...]
    runs: int = 30
    success_threshold: float = 1e-5
    sn: int = 20
    limit: int = 100
    max_cycles: int = 2000
    eval_budget: int = 20000
    employed_fraction: float = 0.5
    replacement: str = "pair-worst"
    master_seed: int = 0
    n_jobs: int = 1

    def __post_init__(self):
        if not self.algorithms:
            raise ValueError("campaign needs at least one algorithm")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        labels = [a.label for a in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate algorithm labels: {labels}")

    def abc_config(self, algo: AlgorithmSpec, seed: int) -> AbcConfig:
        return AbcConfig(
            sn=self.sn,
            limit=self.limit,
            max_cycles=self.max_cycles,
            eval_budget=self.eval_budget,
            crossover_probability=algo.pr if algo.kind == "cbabc" else 0.0,
            variant="cbabc" if algo.kind == "cbabc" else "abc",
            employed_fraction=self.employed_fraction,
            replacement=self.replacement,
            seed=seed,
        )


@dataclass
class AlgoStats:
    """Cross-run aggregates for one algorithm."""

    label: str
    results: list[RunResult]
    mean_objective: float
    sd_objective: float
    avg_evaluations: float
    sd_evaluations: float
    mean_curve: np.ndarray  # mean best objective per cycle, runs padded with their final best


@dataclass
class CampaignStats:
    problem_name: str
    dimension: int
    runs: int
    master_seed: int
    max_cycles: int
    eval_budget: int
    success_threshold: float
    algos: list[AlgoStats] = field(default_factory=list)

    @property
    def labels(self) -> list[str]:
        return [a.label for a in self.algos]


def derive_seed(master_seed: int, label: str, run_index: int) -> int:
    """Stable 64-bit run seed from (master seed, algorithm label, run index)."""
    digest = hashlib.sha256(f"{master_seed}|{label}|{run_index}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def _one_run(problem: Problem, cfg: CampaignConfig, algo: AlgorithmSpec, r: int) -> RunResult:
    seed = derive_seed(cfg.master_seed, algo.label, r)
    abc_cfg = cfg.abc_config(algo, seed)
    if algo.kind == "random":
        return random_search(problem, abc_cfg, cfg.success_threshold)
    return run(problem, abc_cfg, cfg.success_threshold)


def _aggregate(label: str, results: list[RunResult]) -> AlgoStats:
    finals = np.array([r.best_objective for r in results])
    evals = np.array([r.evaluations_to_success for r in results], dtype=float)
    width = max(len(r.trace) for r in results)
    padded = np.vstack(
        [np.concatenate([r.trace, np.full(width - len(r.trace), r.trace[-1])]) for r in results]
    )
    n = len(results)
    return AlgoStats(
        label=label,
        results=results,
        mean_objective=float(finals.mean()),
        sd_objective=float(finals.std(ddof=1)) if n > 1 else 0.0,
        avg_evaluations=float(evals.mean()),
        sd_evaluations=float(evals.std(ddof=1)) if n > 1 else 0.0,
        mean_curve=padded.mean(axis=0),
    )


def run_campaign(cfg: CampaignConfig) -> CampaignStats:
    """Execute runs x algorithms independent optimizer runs and aggregate.

    Results are aggregated in (algorithm, run index) order, so the output
    does not depend on n_jobs.
    """
    tasks = [(algo, r) for algo in cfg.algorithms for r in range(cfg.runs)]
    results = Parallel(n_jobs=cfg.n_jobs)(
        delayed(_one_run)(cfg.problem, cfg, algo, r) for algo, r in tasks
    )
    stats = CampaignStats(
        problem_name=cfg.problem.name,
        dimension=cfg.problem.dimension,
        runs=cfg.runs,
        master_seed=cfg.master_seed,
        max_cycles=cfg.max_cycles,
        eval_budget=cfg.eval_budget,
        success_threshold=cfg.success_threshold,
    )
    for idx, algo in enumerate(cfg.algorithms):
        chunk = list(results[idx * cfg.runs : (idx + 1) * cfg.runs])
        stats.algos.append(_aggregate(algo.label, chunk))
    return stats


def _check_common_labels(stats: list[CampaignStats]) -> list[str]:
    if not stats:
        raise ValueError("need at least one campaign")
    labels = stats[0].labels
    for s in stats[1:]:
        if s.labels != labels:
            raise ValueError(
                f"campaigns disagree on algorithms: {labels} vs {s.labels} ({s.problem_name})"
            )
    return labels


def _render_grid(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in rows)
    return "\n".join(lines) + "\n"


def _marked_row(values: list[float], fmt) -> list[str]:
    best = min(range(len(values)), key=lambda i: values[i])
    return [fmt(v) + (" *" if i == best else "") for i, v in enumerate(values)]


def compare_table(stats: list[CampaignStats]) -> str:
    """Benchmark-style comparison grid: one problem per block, algorithms as columns.

    Each problem contributes a mean-objective row and an
    average-evaluations row; the per-row best (lowest) mean is marked
    with ``*``.
    """
    labels = _check_common_labels(stats)
    header = ["problem", "measure", *labels]
    rows = []
    for s in stats:
        mo = [a.mean_objective for a in s.algos]
        ae = [a.avg_evaluations for a in s.algos]
        rows.append([s.problem_name, "mean_objective", *_marked_row(mo, _format_objective)])
        rows.append([s.problem_name, "avg_evaluations", *_marked_row(ae, _format_evals)])
    return _render_grid(header, rows)


def write_comparison_csv(stats: list[CampaignStats], path) -> None:
    """Raw campaign statistics, one row per (problem, measure)."""
    labels = _check_common_labels(stats)
    buf = io.StringIO()
    buf.write("problem,dimension,measure," + ",".join(labels) + "\n")
    measures = [
        ("mean_objective", "mean_objective", _format_objective),
        ("sd_objective", "sd_objective", _format_objective),
        ("avg_evaluations", "avg_evaluations", _format_evals),
        ("sd_evaluations", "sd_evaluations", _format_evals),
    ]
    for s in stats:
        for name, attr, fmt in measures:
            cells = ",".join(fmt(getattr(a, attr)) for a in s.algos)
            buf.write(f"{s.problem_name},{s.dimension},{name},{cells}\n")
    _write_text(path, buf.getvalue())


def cycle_grid_values(stats: CampaignStats, grid: tuple[int, ...]) -> dict[str, list[float]]:
    """Mean best objective at each cycle checkpoint, per algorithm.

    Reading checkpoints off the mean curve equals running separate
    campaigns per cycle cap: run seeds do not depend on the cap, so a
    longer run is a cycle-for-cycle extension of a shorter one.
    """
    out = {}
    for a in stats.algos:
        curve = a.mean_curve
        out[a.label] = [float(curve[min(c, len(curve) - 1)]) for c in grid]
    return out


def tsp_grid_table(stats: list[CampaignStats], grid: tuple[int, ...]) -> str:
    """Cycle-budget grid: one row per (algorithm, instance), cycle caps as columns.

    Within each instance block the better algorithm per column is marked
    with ``*``.
    """
    labels = _check_common_labels(stats)
    header = ["algorithm", "problem", "n", *[f"cycles_{c}" for c in grid]]
    rows = []
    for s in stats:
        values = cycle_grid_values(s, grid)
        best_per_col = [
            min(range(len(labels)), key=lambda i: values[labels[i]][j]) for j in range(len(grid))
        ]
        for i, label in enumerate(labels):
            cells = [
                _format_objective(v) + (" *" if best_per_col[j] == i else "")
                for j, v in enumerate(values[label])
            ]
            rows.append([label, s.problem_name, str(s.dimension), *cells])
    return _render_grid(header, rows)


def write_tsp_grid_csv(stats: list[CampaignStats], grid: tuple[int, ...], path) -> None:
    labels = _check_common_labels(stats)
    buf = io.StringIO()
    buf.write("algorithm,problem,n," + ",".join(f"cycles_{c}" for c in grid) + "\n")
    for s in stats:
        values = cycle_grid_values(s, grid)
        for label in labels:
            cells = ",".join(_format_objective(v) for v in values[label])
            buf.write(f"{label},{s.problem_name},{s.dimension},{cells}\n")
    _write_text(path, buf.getvalue())


def emit_plot_data(stats: CampaignStats, path) -> None:
    """Per-cycle mean-best series as CSV columns (cycle, one column per algorithm)."""
    buf = io.StringIO()
    buf.write("cycle," + ",".join(stats.labels) + "\n")
    if stats.algos:
        width = max(len(a.mean_curve) for a in stats.algos)
        for c in range(width):
            cells = ",".join(
                _format_objective(a.mean_curve[min(c, len(a.mean_curve) - 1)])
                for a in stats.algos
            )
            buf.write(f"{c},{cells}\n")
    _write_text(path, buf.getvalue())


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)
