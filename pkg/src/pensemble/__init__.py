"""Determinantal point process on complex projective space.

Sampling of the weighted-monomial projection-kernel process on CP^d, lifts
to odd-dimensional spheres, discrete Riesz/log/Green energies, their exact
expected values, and a seeded Monte Carlo validation harness.
"""

from .closed_forms import (
    BoundConstants,
    ExpectedEnergy,
    QuadratureError,
    beta,
    bound_constants,
    continuous_sphere_energy,
    digamma,
    expected_green_energy,
    expected_projective_log,
    expected_projective_riesz,
    expected_sphere_2energy_exact,
    log_gamma,
    quadrature_expected_projective_riesz,
)
from .energy import (
    EnergyReport,
    green_energy,
    green_function,
    log_energy,
    projective_log_energy,
    projective_riesz_energy,
    riesz_energy,
)
from .geometry import (
    ChartPoint,
    DimensionMismatchError,
    PointAtInfinityError,
    ProjectivePoint,
    chart_jacobian,
    chart_to_projective,
    fubini_sin_distance,
    projective_to_chart,
)
from .kernel import (
    KernelParams,
    basis_coefficient,
    enumerate_multi_indices,
    feature_vector,
    joint_intensity_2,
    kernel_eval,
    projective_kernel_magnitude,
)
from .lift import SphereConfiguration, lift_to_sphere, realify
from .montecarlo import (
    EnergySpec,
    ExperimentConfig,
    ExperimentReport,
    default_energy_specs,
    emit_figure1_data,
    run_experiment,
)
from .pointset import PointSetFile, read_pointset, write_pointset
from .sampler import (
    ProjectiveSample,
    RejectionBudgetExceededError,
    SamplerConfig,
    derive_trial_rng,
    sample_projective_ensemble,
    sample_uniform_cp,
)

__version__ = "0.1.0"
