"""Seeded Monte Carlo harness comparing sampled energies to closed forms.

Each trial owns an rng derived from (master_seed, trial_index), so results
are independent of execution order and of the number of worker processes;
aggregation is a deterministic fold in trial order. Trials whose energies hit
a coincident pair are discarded and counted.
"""

from __future__ import annotations

import math
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .closed_forms import (
    bound_constants,
    expected_green_energy,
    expected_projective_log,
    expected_projective_riesz,
    expected_sphere_2energy_exact,
)
from .energy import (
    green_energy,
    projective_log_energy,
    projective_riesz_energy,
    riesz_energy,
)
from .geometry import ProjectivePoint
from .kernel import KernelParams
from .lift import lift_to_sphere, realify
from .sampler import ProjectiveSample, _sample_points, derive_trial_rng

__all__ = [
    "EnergySpec",
    "ExperimentConfig",
    "EnergyResult",
    "ExperimentReport",
    "default_energy_specs",
    "run_experiment",
    "emit_figure1_data",
]

_KINDS = ("projective_riesz", "projective_log", "green", "sphere_riesz")
_MOM_BLOCKS = 20


@dataclass(frozen=True)
class EnergySpec:
    """One energy to estimate per trial; s is ignored by the log/green kinds."""

    kind: str
    s: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown energy kind {self.kind!r}; expected one of {_KINDS}")

    def label(self) -> str:
        if self.kind in ("projective_riesz", "sphere_riesz"):
            return f"{self.kind}(s={self.s:g})"
        return self.kind


@dataclass(frozen=True)
class ExperimentConfig:
    """Trial plan: ensemble parameters, requested energies, and seeding."""

    d: int
    L: int
    k: int  # 0 means projective-only (no sphere lift)
    energies: tuple[EnergySpec, ...]
    trials: int
    master_seed: int
    estimator: str = "auto"  # auto | mean | median_of_means
    mom_blocks: int = _MOM_BLOCKS
    max_rejections_per_point: int = 10_000_000

    def __post_init__(self) -> None:
        if self.d < 1 or self.L < 1 or self.k < 0:
            raise ValueError("require d >= 1, L >= 1 and k >= 0")
        if self.trials < 2:
            raise ValueError("trials must be >= 2 so the standard error is defined")
        if not self.energies:
            raise ValueError("at least one energy spec is required")
        if self.estimator not in ("auto", "mean", "median_of_means"):
            raise ValueError(f"unknown estimator {self.estimator!r}")
        if self.mom_blocks < 2:
            raise ValueError("median-of-means needs at least 2 blocks")
        for spec in self.energies:
            if spec.kind == "projective_riesz" and not 0.0 < spec.s < 2.0 * self.d:
                raise ValueError(f"projective_riesz needs s in (0, {2 * self.d})")
            if spec.kind == "sphere_riesz":
                if self.k < 1:
                    raise ValueError("sphere_riesz requires a lift (k >= 1)")
                if spec.s <= 0:
                    raise ValueError("sphere_riesz requires s > 0")
            if spec.kind == "green" and self.d < 2:
                raise ValueError("green energy requires d >= 2")


@dataclass(frozen=True)
class EnergyResult:
    """Aggregated statistics for one requested energy."""

    kind: str
    s: float
    estimator: str
    sample_mean: float
    sample_std: float
    standard_error: float
    closed_form_exact: Optional[float]
    z_score: Optional[float]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "s": self.s,
            "estimator": self.estimator,
            "sample_mean": self.sample_mean,
            "sample_std": self.sample_std,
            "standard_error": self.standard_error,
            "closed_form_exact": self.closed_form_exact,
            "z_score": self.z_score,
        }


@dataclass(frozen=True)
class ExperimentReport:
    """Deterministic experiment summary; wall_time stays out of to_dict so
    repeated runs (any worker count) serialize byte-identically."""

    d: int
    L: int
    k: int
    trials: int
    master_seed: int
    results: tuple[EnergyResult, ...]
    trials_retained: int
    trials_discarded: int
    wall_time: float = field(compare=False, default=0.0)

    def max_abs_z(self) -> float:
        zs = [abs(res.z_score) for res in self.results if res.z_score is not None]
        return max(zs) if zs else 0.0

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "L": self.L,
            "k": self.k,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "trials_retained": self.trials_retained,
            "trials_discarded": self.trials_discarded,
            "energies": [res.to_dict() for res in self.results],
        }


def default_energy_specs(d: int, k: int) -> tuple[EnergySpec, ...]:
    """Validation defaults: Riesz at s=2 (s=1 when d=1), log, green for d >= 2,
    and the sphere 2-energy when a lift is requested."""
    specs = [
        EnergySpec("projective_riesz", 2.0 if d >= 2 else 1.0),
        EnergySpec("projective_log"),
    ]
    if d >= 2:
        specs.append(EnergySpec("green"))
    if k >= 1:
        specs.append(EnergySpec("sphere_riesz", 2.0))
    return tuple(specs)


@lru_cache(maxsize=None)
def _cached_params(d: int, L: int) -> KernelParams:
    return KernelParams(d, L)


def _trial_values(config: ExperimentConfig, trial_index: int) -> np.ndarray:
    params = _cached_params(config.d, config.L)
    rng = derive_trial_rng(config.master_seed, trial_index)
    matrix, _ = _sample_points(params, rng, config.max_rejections_per_point)
    points = tuple(ProjectivePoint(row) for row in matrix)
    lifted_real = None
    if config.k >= 1:
        sample = ProjectiveSample(points=points, params=params, seed=config.master_seed)
        lifted_real = realify(lift_to_sphere(sample, config.k, rng))
    out = np.empty(len(config.energies))
    for i, spec in enumerate(config.energies):
        if spec.kind == "projective_riesz":
            out[i] = projective_riesz_energy(points, spec.s)
        elif spec.kind == "projective_log":
            out[i] = projective_log_energy(points)
        elif spec.kind == "green":
            out[i] = green_energy(points, config.d)
        else:  # sphere_riesz
            out[i] = riesz_energy(lifted_real, spec.s)
    return out


_WORKER_CONFIG: Optional[ExperimentConfig] = None


def _worker_init(config: ExperimentConfig) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _worker_trial(trial_index: int) -> np.ndarray:
    return _trial_values(_WORKER_CONFIG, trial_index)


def _closed_form(config: ExperimentConfig, spec: EnergySpec) -> Optional[float]:
    if spec.kind == "projective_riesz":
        return expected_projective_riesz(config.d, config.L, spec.s).exact
    if spec.kind == "projective_log":
        return expected_projective_log(config.d, config.L).exact
    if spec.kind == "green":
        return expected_green_energy(config.d, config.L).exact
    if spec.s == 2.0:
        return expected_sphere_2energy_exact(config.d, config.L, config.k).exact
    return None  # no closed form for sphere Riesz away from s = 2


def _estimator_for(config: ExperimentConfig, spec: EnergySpec) -> str:
    if config.estimator != "auto":
        return config.estimator
    # Summands near the sin-distance singularity get heavy-tailed once s
    # passes d; fall back to a robust estimate there.
    if spec.kind == "projective_riesz" and spec.s > config.d:
        return "median_of_means"
    return "mean"


def _aggregate_column(values: np.ndarray, estimator: str, mom_blocks: int) -> tuple[float, float, float, str]:
    """Point estimate, overall std, standard error, and estimator label."""
    m = values.size
    std = float(np.std(values, ddof=1))
    if estimator == "mean":
        return float(np.mean(values)), std, std / math.sqrt(m), "mean"
    blocks = min(mom_blocks, m)
    block_means = np.array([float(np.mean(b)) for b in np.array_split(values, blocks)])
    estimate = float(np.median(block_means))
    # Asymptotic standard error of a median of iid block means.
    se = math.sqrt(math.pi / (2.0 * blocks)) * float(np.std(block_means, ddof=1))
    return estimate, std, se, f"median_of_means({blocks})"


def _build_report(
    config: ExperimentConfig, values: np.ndarray, wall_time: float
) -> ExperimentReport:
    finite = np.all(np.isfinite(values), axis=1)
    retained = values[finite]
    discarded = int(values.shape[0] - retained.shape[0])
    if retained.shape[0] == 0:
        raise RuntimeError("all trials were discarded (coincident points in every draw)")
    if retained.shape[0] < 2:
        raise RuntimeError("fewer than 2 trials retained; the standard error is undefined")
    results = []
    for col, spec in enumerate(config.energies):
        estimator = _estimator_for(config, spec)
        estimate, std, se, label = _aggregate_column(
            retained[:, col], estimator, config.mom_blocks
        )
        exact = _closed_form(config, spec)
        if exact is None:
            z = None
        elif se > 0.0:
            z = (estimate - exact) / se
        elif estimate == exact:
            z = 0.0
        else:
            raise RuntimeError(
                f"{spec.kind}: zero variance across trials but the estimate "
                "differs from the closed form"
            )
        results.append(
            EnergyResult(
                kind=spec.kind,
                s=spec.s,
                estimator=label,
                sample_mean=estimate,
                sample_std=std,
                standard_error=se,
                closed_form_exact=exact,
                z_score=z,
            )
        )
    return ExperimentReport(
        d=config.d,
        L=config.L,
        k=config.k,
        trials=config.trials,
        master_seed=config.master_seed,
        results=tuple(results),
        trials_retained=int(retained.shape[0]),
        trials_discarded=discarded,
        wall_time=wall_time,
    )


def run_experiment(config: ExperimentConfig, workers: Optional[int] = None) -> ExperimentReport:
    """Run all trials (optionally across processes) and aggregate by trial index."""
    start = time.perf_counter()
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or config.trials < 4:
        rows = [_trial_values(config, i) for i in range(config.trials)]
    else:
        chunk = max(1, config.trials // (workers * 8))
        with multiprocessing.get_context().Pool(
            processes=workers, initializer=_worker_init, initargs=(config,)
        ) as pool:
            rows = pool.map(_worker_trial, range(config.trials), chunksize=chunk)
    values = np.vstack(rows)
    return _build_report(config, values, time.perf_counter() - start)


def emit_figure1_data(d_max: int) -> list[tuple[int, float, float]]:
    """Rows (d, projective_bound, harmonic_bound) for d = 1..d_max."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    rows = []
    for d in range(1, d_max + 1):
        consts = bound_constants(d)
        rows.append((d, consts.projective_bound, consts.harmonic_bound))
    return rows
