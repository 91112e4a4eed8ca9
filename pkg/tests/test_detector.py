import numpy as np
import pytest

from nhscope.exceptions import InvalidInputError
from nhscope.petermann import detect_discontinuities


def test_step_is_flagged_once():
    grid = np.linspace(0.0, 1.0, 100)
    series = 0.01 * grid + (np.arange(100) > 50)
    report = detect_discontinuities(series, grid)
    assert len(report.locations) == 1
    left, right, jump = report.locations[0]
    assert left == grid[50] and right == grid[51]
    assert jump == pytest.approx(1.0, abs=1e-3)


def test_smooth_series_has_no_jumps():
    grid = np.linspace(0.0, 2 * np.pi, 200)
    assert detect_discontinuities(np.sin(grid), grid).locations == []


def test_adjacent_flags_merge_at_peak():
    grid = np.linspace(0.0, 1.0, 60)
    series = np.zeros(60)
    series[30] = 0.5
    series[31:] = 1.5
    report = detect_discontinuities(series, grid)
    assert len(report.locations) == 1
    assert report.locations[0][1] == grid[31]
    assert report.locations[0][2] == pytest.approx(1.0)


def test_floor_suppresses_small_steps():
    grid = np.linspace(0.0, 1.0, 60)
    series = 1e-4 * (np.arange(60) >= 30)
    assert detect_discontinuities(series, grid, floor=1e-3).locations == []
    assert len(detect_discontinuities(series, grid, floor=1e-5).locations) == 1


def test_report_dict_shape():
    grid = np.linspace(0.0, 1.0, 40)
    report = detect_discontinuities((np.arange(40) >= 20).astype(float), grid, w=5, kappa=8.0, floor=0.1)
    data = report.to_dict()
    assert data["kind"] == "eta"
    assert data["detector"] == {"w": 5, "kappa": 8.0, "floor": 0.1}
    assert set(data["locations"][0]) == {"param_left", "param_right", "jump_magnitude"}


@pytest.mark.parametrize("series, grid, w", [
    (np.zeros(10), np.linspace(0, 1, 10), 10),
    (np.zeros(30), np.linspace(0, 1, 31), 10),
    (np.zeros(30), np.linspace(0, 1, 30), 0),
    (np.r_[np.zeros(29), np.nan], np.linspace(0, 1, 30), 10),
])
def test_invalid_input(series, grid, w):
    with pytest.raises(InvalidInputError):
        detect_discontinuities(series, grid, w=w)
