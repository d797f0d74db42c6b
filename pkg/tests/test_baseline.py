"""Tests for the exponential contagion baseline."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from hawkesmisd.baseline.towers import (
    TowersModel,
    compare,
    expected_series,
    mean_window_offspring,
    towers_expected,
    towers_probability,
    window_share,
)
from hawkesmisd.exceptions import ConfigurationError, DomainError
from hawkesmisd.misd.estimator import FittedModel

BASELINE = TowersModel(t_excite=13.0, n_secondary=0.3, n0=0.01)


def test_first_day_probability():
    """Delta = 1 gives 1 - exp(-1/13)."""
    value = towers_probability(1, 13.0)
    assert value == pytest.approx(1 - math.exp(-1 / 13), abs=1e-15)
    assert value == pytest.approx(0.0740389, abs=1e-7)
    assert value == pytest.approx(-np.expm1(-1 / 13), abs=1e-15)


def test_probabilities_telescope_to_one():
    """Daily probabilities over 500 days sum to 1."""
    total = np.sum(towers_probability(np.arange(1, 501), 13.0))
    assert abs(total - 1.0) < 1e-12


def test_probability_decays():
    """A thousand days out the contagion is negligible."""
    assert towers_probability(1000, 13.0) < 1e-30


def test_probability_domain():
    """Gaps below one day, fractional gaps and bad durations are rejected."""
    for delta in (0, -3, 1.5):
        with pytest.raises(DomainError):
            towers_probability(delta, 13.0)
    with pytest.raises(DomainError):
        towers_probability(1, 0.0)


def test_expected_without_history(make_catalog):
    """No earlier events leaves the baseline count."""
    assert towers_expected(0.0, make_catalog([0.0, 5.0]), BASELINE) == pytest.approx(0.01)


def test_expected_one_day_after_event(make_catalog):
    """One event a day earlier adds N_secondary times the first-day probability."""
    assert towers_expected(1.0, make_catalog([0.0]), BASELINE) == pytest.approx(0.0322117, abs=1e-7)


def test_expected_series_increment(make_catalog):
    """Day 1 after an isolated event rises by 0.3 (1 - exp(-1/13))."""
    series = expected_series(make_catalog([0.0], T=30), BASELINE)
    assert series.size == 30
    assert series[0] == pytest.approx(0.01)
    assert series[1] - series[0] == pytest.approx(0.3 * (1 - math.exp(-1 / 13)))


def test_n0_table_is_clamped():
    """Per-day baseline counts repeat their last entry."""
    model = TowersModel(t_excite=5.0, n_secondary=0.1, n0=[0.1, 0.2])
    assert model.n0_at(0.5) == 0.1
    assert model.n0_at(1.2) == 0.2
    assert model.n0_at(40.0) == 0.2


def test_model_validation():
    """Durations must be positive and counts non-negative."""
    with pytest.raises(ConfigurationError):
        TowersModel(t_excite=0.0, n_secondary=0.3)
    with pytest.raises(ValidationError):
        TowersModel.from_dict({"t_excite": 13, "n_secondary": -1})


def test_from_dict():
    """The JSON form loads with defaults."""
    model = TowersModel.from_dict({"t_excite": 13, "n_secondary": 0.3})
    assert model.n0 == 0.0
    assert model.to_dict() == {"t_excite": 13.0, "n_secondary": 0.3, "n0": 0.0}


def test_window_share():
    """The baseline's 13-day share of secondary events."""
    assert window_share(BASELINE, 13) == pytest.approx(0.3 * (1 - math.exp(-1)))


def test_no_contagion_on_either_side(make_catalog, homogeneous_model):
    """k = 0 against N_secondary = 0: both report no contagion."""
    catalog = make_catalog([1.0, 4.0, 9.0, 9.5], T=20)
    fitted = FittedModel.from_model(homogeneous_model, catalog)
    report = compare(fitted, TowersModel(t_excite=13.0, n_secondary=0.0), catalog)
    assert report.misd_mean_offspring == 0.0
    assert report.misd_offspring_within_window == 0.0
    assert report.towers_within_window == 0.0
    assert len(report.series_rows()) == 20


def test_mean_window_offspring(make_catalog, homogeneous_model):
    """Averages the MISD window offspring over reports."""
    catalog = make_catalog([1.0, 4.0], T=20)
    fitted = FittedModel.from_model(homogeneous_model, catalog)
    reports = [compare(fitted, BASELINE, catalog) for _ in range(3)]
    assert mean_window_offspring(reports) == 0.0
    with pytest.raises(ValueError):
        mean_window_offspring([])
