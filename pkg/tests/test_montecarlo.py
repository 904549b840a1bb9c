import math

import numpy as np
import pytest

from pensemble import (
    EnergySpec,
    ExperimentConfig,
    bound_constants,
    default_energy_specs,
    emit_figure1_data,
    expected_projective_riesz,
    run_experiment,
)
from pensemble.montecarlo import _aggregate_column, _build_report
from pensemble.pointset import dumps


def _config(**overrides):
    base = dict(
        d=2,
        L=1,
        k=0,
        energies=(EnergySpec("projective_riesz", 2.0),),
        trials=16,
        master_seed=5,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


# -------------------------------------------------------------- configuration

def test_config_validation():
    with pytest.raises(ValueError):
        _config(trials=1)
    with pytest.raises(ValueError):
        _config(energies=())
    with pytest.raises(ValueError):
        _config(energies=(EnergySpec("projective_riesz", 5.0),))  # s >= 2d
    with pytest.raises(ValueError):
        _config(energies=(EnergySpec("sphere_riesz", 2.0),), k=0)
    with pytest.raises(ValueError):
        _config(d=1, energies=(EnergySpec("green"),))
    with pytest.raises(ValueError):
        EnergySpec("unknown_kind")


def test_default_energy_specs():
    kinds = [spec.kind for spec in default_energy_specs(2, 0)]
    assert kinds == ["projective_riesz", "projective_log", "green"]
    kinds = [spec.kind for spec in default_energy_specs(1, 2)]
    assert kinds == ["projective_riesz", "projective_log", "sphere_riesz"]
    assert default_energy_specs(1, 0)[0].s == 1.0
    assert default_energy_specs(3, 0)[0].s == 2.0


# ---------------------------------------------------------------- aggregation

def test_aggregate_mean_column():
    vals = np.array([1.0, 2.0, 3.0, 4.0])
    est, std, se, label = _aggregate_column(vals, "mean", 20)
    assert est == 2.5
    assert std == pytest.approx(np.std(vals, ddof=1))
    assert se == pytest.approx(std / 2.0)
    assert label == "mean"


def test_aggregate_median_of_means_column():
    # 4 blocks of 2: block means 1.5, 3.5, 5.5, 1007.5; median = 4.5.
    vals = np.array([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 2008.0])
    est, _, se, label = _aggregate_column(vals, "median_of_means", 4)
    assert est == pytest.approx(4.5)
    block_means = np.array([1.5, 3.5, 5.5, 1007.5])
    assert se == pytest.approx(
        math.sqrt(math.pi / 8.0) * np.std(block_means, ddof=1)
    )
    assert label == "median_of_means(4)"


def test_estimator_auto_switches_to_median_of_means():
    config = _config(energies=(EnergySpec("projective_riesz", 3.0),), trials=64)
    report = run_experiment(config, workers=1)
    assert report.results[0].estimator == "median_of_means(20)"
    config = _config(trials=64)  # s = 2 <= d stays on the plain mean
    report = run_experiment(config, workers=1)
    assert report.results[0].estimator == "mean"


def test_build_report_discards_nonfinite_rows():
    config = _config(trials=6)
    values = np.array([[1.0], [2.0], [np.inf], [3.0], [np.inf], [4.0]])
    report = _build_report(config, values, 0.0)
    assert report.trials_discarded == 2
    assert report.trials_retained == 4
    assert report.results[0].sample_mean == pytest.approx(2.5)


def test_build_report_all_discarded_raises():
    config = _config(trials=2)
    with pytest.raises(RuntimeError):
        _build_report(config, np.array([[np.inf], [np.inf]]), 0.0)


def test_build_report_single_retained_trial_raises():
    config = _config(trials=3)
    with pytest.raises(RuntimeError, match="standard error"):
        _build_report(config, np.array([[1.0], [np.inf], [np.inf]]), 0.0)


def test_z_score_formula():
    config = _config(trials=4)
    values = np.array([[8.0], [9.0], [10.0], [9.0]])
    report = _build_report(config, values, 0.0)
    res = report.results[0]
    exact = expected_projective_riesz(2, 1, 2.0).exact
    assert res.closed_form_exact == pytest.approx(exact)
    assert res.z_score == pytest.approx((9.0 - exact) / res.standard_error)


# ------------------------------------------------------------------ execution

def test_run_experiment_deterministic_repeat():
    config = _config(trials=2)
    a = run_experiment(config, workers=1)
    b = run_experiment(config, workers=1)
    assert dumps(a.to_dict()) == dumps(b.to_dict())


def test_run_experiment_worker_count_invariance():
    config = _config(trials=24, energies=default_energy_specs(2, 0))
    reports = [run_experiment(config, workers=w) for w in (1, 2, 4)]
    docs = [dumps(rep.to_dict()) for rep in reports]
    assert docs[0] == docs[1] == docs[2]


def test_run_experiment_end_to_end_statistics():
    config = _config(trials=400, energies=default_energy_specs(2, 0), master_seed=31)
    report = run_experiment(config, workers=2)
    assert report.trials_retained == 400
    assert report.trials_discarded == 0
    for res in report.results:
        assert res.z_score is not None
        assert abs(res.z_score) < 6.0
    assert report.wall_time > 0.0
    assert "wall_time" not in report.to_dict()


def test_run_experiment_with_lift():
    config = ExperimentConfig(
        d=1,
        L=1,
        k=2,
        energies=(EnergySpec("sphere_riesz", 2.0),),
        trials=300,
        master_seed=17,
    )
    report = run_experiment(config, workers=2)
    res = report.results[0]
    assert res.closed_form_exact == pytest.approx(19.0 / 3.0)
    assert abs(res.z_score) < 6.0


def test_sphere_riesz_without_closed_form():
    config = ExperimentConfig(
        d=1,
        L=1,
        k=2,
        energies=(EnergySpec("sphere_riesz", 1.0),),
        trials=8,
        master_seed=3,
    )
    report = run_experiment(config, workers=1)
    assert report.results[0].closed_form_exact is None
    assert report.results[0].z_score is None


# --------------------------------------------------------------- figure1 data

def test_figure1_rows():
    rows = emit_figure1_data(5)
    assert len(rows) == 5
    d1 = rows[0]
    assert d1[0] == 1
    assert d1[1] == pytest.approx(0.92079, abs=1e-5)
    assert d1[2] == pytest.approx(0.83203, abs=1e-5)
    for d, pb, hb in rows:
        assert pb > hb
        bc = bound_constants(d)
        assert pb == bc.projective_bound and hb == bc.harmonic_bound


def test_figure1_columns_approach_limits():
    rows = emit_figure1_data(120)
    pb_gap = [abs(row[1] - 3.0 / (4.0 * math.e)) for row in rows]
    hb_gap = [abs(row[2] - 2.0 / math.e**2) for row in rows]
    for gaps in (pb_gap, hb_gap):
        sampled = [gaps[i] for i in (0, 9, 49, 99, 119)]
        assert sampled == sorted(sampled, reverse=True)


def test_figure1_domain():
    with pytest.raises(ValueError):
        emit_figure1_data(0)
