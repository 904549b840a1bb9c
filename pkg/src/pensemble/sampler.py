"""Exact sampling of the projection-kernel determinantal process on CP^d.

Sequential rejection sampler: the one-point intensity of the process is
constant on CP^d, so uniform points are valid proposals with acceptance
ratio |v(q) - proj_U v(q)|^2 / |v(q)|^2, where U is an orthonormal basis of
the feature-space directions of the points already selected. Each accepted
residual extends U, and the expected acceptance rate at step i is (r-i)/r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .geometry import ProjectivePoint
from .kernel import KernelParams, _feature_from_unit

__all__ = [
    "SamplerConfig",
    "ProjectiveSample",
    "RejectionBudgetExceededError",
    "sample_uniform_cp",
    "sample_projective_ensemble",
    "derive_trial_rng",
]

_MAX_SEED = 2**64


class RejectionBudgetExceededError(RuntimeError):
    """A single point burned through the rejection budget (likely a defect)."""


def _check_seed(seed: int) -> int:
    if not isinstance(seed, int) or not 0 <= seed < _MAX_SEED:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


@dataclass(frozen=True)
class SamplerConfig:
    """Everything that determines a sample: kernel parameters and a seed."""

    params: KernelParams
    seed: int
    max_rejections_per_point: int = 10_000_000

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        if self.max_rejections_per_point < 1:
            raise ValueError("max_rejections_per_point must be positive")


@dataclass(frozen=True, eq=False)
class ProjectiveSample:
    """An exact draw of r points in CP^d plus generation metadata.

    ``proposals_per_step`` records how many uniform proposals each selection
    step consumed (diagnostics; the acceptance rate of step i should hover
    around (r-i)/r).
    """

    points: tuple[ProjectivePoint, ...]
    params: KernelParams
    seed: int
    proposals_per_step: tuple[int, ...] = field(default=(), repr=False)

    @cached_property
    def matrix(self) -> np.ndarray:
        """(r, d+1) array of unit representatives, row i = point i."""
        m = np.stack([p.coords for p in self.points])
        m.setflags(write=False)
        return m


def _uniform_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector in C^(d+1) from 2(d+1) standard normals, (re, im) interleaved."""
    while True:
        x = rng.standard_normal(2 * (d + 1))
        v = x[0::2] + 1j * x[1::2]
        norm = np.linalg.norm(v)
        if norm > 1e-150:
            return v / norm


def sample_uniform_cp(d: int, rng: np.random.Generator) -> ProjectivePoint:
    """One point from the normalized Fubini-Study volume on CP^d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return ProjectivePoint(_uniform_unit_vector(d, rng))


def _orthogonal_residual(
    v: np.ndarray, basis: np.ndarray, vnorm2: float
) -> tuple[np.ndarray, float]:
    """Modified Gram-Schmidt residual of v against the rows of ``basis``.

    One re-orthogonalization pass runs when the residual norm drops below
    1/sqrt(2) of the pre-projection norm.
    """
    w = v.copy()
    for u in basis:
        w -= np.vdot(u, w) * u
    n2 = float(np.real(np.vdot(w, w)))
    if basis.shape[0] and n2 < 0.5 * vnorm2:
        for u in basis:
            w -= np.vdot(u, w) * u
        n2 = float(np.real(np.vdot(w, w)))
    return w, n2


def _sample_points(
    params: KernelParams, rng: np.random.Generator, max_rejections: int
) -> tuple[np.ndarray, list[int]]:
    """Core sequential sampler; returns (r, d+1) representatives and proposal counts."""
    d, r = params.d, params.r
    basis = np.empty((r, r), dtype=np.complex128)
    points = np.empty((r, d + 1), dtype=np.complex128)
    proposals: list[int] = []
    selected = 0
    while selected < r:
        tries = 0
        while True:
            tries += 1
            if tries > max_rejections:
                raise RejectionBudgetExceededError(
                    f"point {selected}: no acceptance within {max_rejections} proposals"
                )
            cand = _uniform_unit_vector(d, rng)
            if cand[0] == 0.0:  # measure-zero chart boundary
                continue
            v = _feature_from_unit(cand, params)
            vnorm2 = float(np.real(np.vdot(v, v)))
            w, wnorm2 = _orthogonal_residual(v, basis[:selected], vnorm2)
            if rng.random() < min(wnorm2 / vnorm2, 1.0):
                basis[selected] = w / math.sqrt(wnorm2)
                points[selected] = cand
                proposals.append(tries)
                selected += 1
                break
    return points, proposals


def _assert_no_coincidence(matrix: np.ndarray, tol: float = 1e-12) -> None:
    # Probability-zero event; catching it here beats silent infinities downstream.
    gram = np.abs(matrix @ matrix.conj().T)
    np.fill_diagonal(gram, 0.0)
    if gram.size and gram.max() >= 1.0 - tol:
        raise RuntimeError("sampler produced two projectively equal points")


def sample_projective_ensemble(config: SamplerConfig) -> ProjectiveSample:
    """Draw r = C(d+L, d) points of the determinantal process, reproducibly."""
    rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    matrix, proposals = _sample_points(config.params, rng, config.max_rejections_per_point)
    _assert_no_coincidence(matrix)
    points = tuple(ProjectivePoint(row) for row in matrix)
    return ProjectiveSample(
        points=points,
        params=config.params,
        seed=config.seed,
        proposals_per_step=tuple(proposals),
    )


def derive_trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """Independent per-trial stream via counter-keyed seed derivation.

    The (master_seed, trial_index) pair fully determines the stream, so
    trials can run in any order, or concurrently, with identical results.
    """
    _check_seed(master_seed)
    if trial_index < 0:
        raise ValueError("trial_index must be non-negative")
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))
    return np.random.default_rng(ss)
