"""Weighted-monomial basis on C^d and its reproducing kernel.

For a degree bound L the basis functions are indexed by multi-indices alpha
with |alpha| <= L:

    phi_alpha(z) = sqrt(C_alpha) * z^alpha / (1 + |z|^2)^((d+L+1)/2),
    C_alpha      = (d+L)! / (pi^d * alpha_1! ... alpha_d! * (L - |alpha|)!),

an orthonormal family of r = C(d+L, d) functions in L^2(C^d). The kernel they
reproduce has the closed form

    K(z, w) = (r d! / pi^d) (1 + <z,w>)^L
              / ((1+|z|^2)(1+|w|^2))^((d+L+1)/2),

and its pushforward to CP^d through the affine chart has constant diagonal
r d!/pi^d and magnitude (r d!/pi^d) |<p,q>|^L for unit representatives.

Feature vectors are evaluated incrementally along the graded multi-index
order, either directly on the rescaled coordinates z/sqrt(1+|z|^2) (all
factors bounded by 1) or in log-magnitude/phase form for large L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .geometry import (
    ChartPoint,
    DimensionMismatchError,
    ProjectivePoint,
    chart_jacobian,
    inner,
)

__all__ = [
    "KernelParams",
    "enumerate_multi_indices",
    "basis_coefficient",
    "feature_vector",
    "kernel_eval",
    "projective_kernel_magnitude",
    "joint_intensity_2",
    "LOG_FORM_MIN_L",
]

# Degree at or above which feature vectors switch to the log-magnitude/phase
# evaluation; direct monomial products stay well scaled below it.
LOG_FORM_MIN_L = 200


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    # First coordinate descending, recursively; yields C(total+slots-1, slots-1) tuples.
    if slots == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, slots - 1):
            yield (head,) + rest


def enumerate_multi_indices(d: int, L: int) -> list[tuple[int, ...]]:
    """All exponent tuples with |alpha| <= L in graded order.

    Degree blocks are contiguous and ascending; within a degree the first
    coordinate descends, so the order is reproducible and serialization of
    feature vectors is stable.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if L < 0:
        raise ValueError("L must be >= 0")
    out: list[tuple[int, ...]] = []
    for degree in range(L + 1):
        out.extend(_compositions(degree, d))
    return out


@dataclass(frozen=True)
class _BasisTables:
    """Precomputed evaluation tables along the graded multi-index order."""

    alphas: np.ndarray        # (r, d) int64 exponents
    degrees: np.ndarray       # (r,) int64 |alpha|
    parent: np.ndarray        # (r,) index of alpha - e_axis (0 for the constant)
    axis: np.ndarray          # (r,) coordinate stepped from the parent
    log_coeff: np.ndarray     # (r,) log C_alpha
    sqrt_coeff: np.ndarray    # (r,) sqrt(C_alpha)
    degree_starts: np.ndarray  # (L+2,) block boundaries per degree


@dataclass(frozen=True)
class KernelParams:
    """Immutable parameters (d, L) of the weighted-monomial subspace."""

    d: int
    L: int

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError("d must be a positive integer")
        if not isinstance(self.L, int) or self.L < 0:
            raise ValueError("L must be a non-negative integer")

    @cached_property
    def r(self) -> int:
        """Subspace dimension C(d+L, d)."""
        return math.comb(self.d + self.L, self.d)

    @cached_property
    def intensity(self) -> float:
        """Constant one-point intensity on CP^d: r d! / pi^d."""
        return math.exp(
            math.log(self.r) + math.lgamma(self.d + 1) - self.d * math.log(math.pi)
        )

    @cached_property
    def _tables(self) -> _BasisTables:
        alphas = enumerate_multi_indices(self.d, self.L)
        index_of = {a: i for i, a in enumerate(alphas)}
        r = len(alphas)
        parent = np.zeros(r, dtype=np.int64)
        axis = np.zeros(r, dtype=np.int64)
        log_coeff = np.empty(r)
        degrees = np.empty(r, dtype=np.int64)
        base = math.lgamma(self.d + self.L + 1) - self.d * math.log(math.pi)
        for i, alpha in enumerate(alphas):
            total = sum(alpha)
            degrees[i] = total
            log_coeff[i] = (
                base
                - sum(math.lgamma(a + 1) for a in alpha)
                - math.lgamma(self.L - total + 1)
            )
            if total > 0:
                j = next(k for k, a in enumerate(alpha) if a > 0)
                down = list(alpha)
                down[j] -= 1
                parent[i] = index_of[tuple(down)]
                axis[i] = j
        degree_starts = np.searchsorted(degrees, np.arange(self.L + 2))
        tables = _BasisTables(
            alphas=np.asarray(alphas, dtype=np.int64),
            degrees=degrees,
            parent=parent,
            axis=axis,
            log_coeff=log_coeff,
            sqrt_coeff=np.exp(0.5 * log_coeff),
            degree_starts=degree_starts,
        )
        for arr in (tables.alphas, tables.degrees, tables.parent, tables.axis,
                    tables.log_coeff, tables.sqrt_coeff, tables.degree_starts):
            arr.setflags(write=False)
        return tables


def basis_coefficient(alpha: Sequence[int], params: KernelParams) -> float:
    """Coefficient C_alpha, evaluated through log-gamma to avoid overflow."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != params.d:
        raise ValueError(f"alpha has {len(alpha)} entries, expected d={params.d}")
    if any(a < 0 for a in alpha):
        raise ValueError("multi-index entries must be non-negative")
    total = sum(alpha)
    if total > params.L:
        raise ValueError(f"sum(alpha)={total} exceeds the degree bound L={params.L}")
    log_c = (
        math.lgamma(params.d + params.L + 1)
        - sum(math.lgamma(a + 1) for a in alpha)
        - math.lgamma(params.L - total + 1)
        - params.d * math.log(math.pi)
    )
    return math.exp(log_c)


def _feature_scaled(
    zhat: np.ndarray, log_one_plus_sq: float, params: KernelParams, method: str
) -> np.ndarray:
    """Feature vector from zhat = z/sqrt(1+|z|^2) and log(1+|z|^2)."""
    if method == "auto":
        method = "log" if params.L >= LOG_FORM_MIN_L else "direct"
    if method not in ("direct", "log"):
        raise ValueError(f"unknown feature evaluation method {method!r}")
    t = params._tables
    r = params.r
    # (1+|z|^2)^((deg - d - L - 1)/2), always <= 1.
    shift = 0.5 * (t.degrees - (params.d + params.L + 1)) * log_one_plus_sq
    starts = t.degree_starts
    if method == "direct":
        mon = np.empty(r, dtype=np.complex128)
        mon[0] = 1.0
        for degree in range(1, params.L + 1):
            blk = slice(starts[degree], starts[degree + 1])
            mon[blk] = mon[t.parent[blk]] * zhat[t.axis[blk]]
        return t.sqrt_coeff * mon * np.exp(shift)
    with np.errstate(divide="ignore"):
        log_mod = np.log(np.abs(zhat))  # -inf at zero coordinates is fine
    ang = np.angle(zhat)
    log_mag = np.empty(r)
    phase = np.empty(r)
    log_mag[0] = 0.0
    phase[0] = 0.0
    for degree in range(1, params.L + 1):
        blk = slice(starts[degree], starts[degree + 1])
        log_mag[blk] = log_mag[t.parent[blk]] + log_mod[t.axis[blk]]
        phase[blk] = phase[t.parent[blk]] + ang[t.axis[blk]]
    return np.exp(0.5 * t.log_coeff + log_mag + shift) * np.exp(1j * phase)


def _feature_from_unit(coords: np.ndarray, params: KernelParams, method: str = "auto") -> np.ndarray:
    """Feature vector at the chart image of a unit representative in C^(d+1).

    Avoids forming z = p_{2:}/p_1 explicitly: with a = |p_1| the rescaled
    chart coordinates are p_{2:} * conj(p_1)/a and 1+|z|^2 = 1/a^2.
    """
    p0 = coords[0]
    a = abs(p0)
    zhat = coords[1:] * (a / p0)
    return _feature_scaled(zhat, -2.0 * math.log(a), params, method)


def feature_vector(z: ChartPoint, params: KernelParams, method: str = "auto") -> np.ndarray:
    """Values of all r basis functions at z, ordered like enumerate_multi_indices.

    ``method`` selects the evaluation path: "direct" (rescaled monomial
    products), "log" (log-magnitude/phase), or "auto" (log for L >= 200).
    """
    if z.d != params.d:
        raise DimensionMismatchError(f"chart point has dimension {z.d}, expected {params.d}")
    s2 = z.squared_norm()
    log1p = math.log1p(s2)
    zhat = z.z * math.exp(-0.5 * log1p)
    return _feature_scaled(zhat, log1p, params, method)


def kernel_eval(z: ChartPoint, w: ChartPoint, params: KernelParams) -> complex:
    """Reproducing kernel K(z, w); Hermitian, with K(z, z) real positive."""
    if z.d != params.d or w.d != params.d:
        raise DimensionMismatchError("chart points must match the kernel dimension d")
    log_sz = math.log1p(z.squared_norm())
    log_sw = math.log1p(w.squared_norm())
    # |1 + <z,w>|^2 <= (1+|z|^2)(1+|w|^2), so the rescaled base stays in the unit disk.
    base = (1.0 + inner(z.z, w.z)) * math.exp(-0.5 * (log_sz + log_sw))
    tail = math.exp(-0.5 * (params.d + 1) * (log_sz + log_sw))
    return complex(params.intensity * base**params.L * tail)


def projective_kernel_magnitude(
    p: ProjectivePoint, q: ProjectivePoint, params: KernelParams
) -> float:
    """|K(p, q)| on CP^d: (r d!/pi^d) |<p,q>|^L for unit representatives."""
    if p.d != q.d:
        raise DimensionMismatchError(f"points live in CP^{p.d} and CP^{q.d}")
    if p.d != params.d:
        raise DimensionMismatchError(f"points live in CP^{p.d}, kernel has d={params.d}")
    c = min(abs(inner(p.coords, q.coords)), 1.0)
    return params.intensity * c**params.L


def joint_intensity_2(p: ProjectivePoint, q: ProjectivePoint, params: KernelParams) -> float:
    """Two-point intensity K(p,p)K(q,q) - |K(p,q)|^2; zero at coincidence."""
    k_pq = projective_kernel_magnitude(p, q, params)
    return max(params.intensity**2 - k_pq**2, 0.0)


def _chart_kernel_magnitude_pushed(z: ChartPoint, w: ChartPoint, params: KernelParams) -> float:
    """|K(z,w)| divided by sqrt of both chart Jacobians (pushforward magnitude)."""
    jac = chart_jacobian(z, params.d) * chart_jacobian(w, params.d)
    return abs(kernel_eval(z, w, params)) / math.sqrt(jac)
