import json
import math

import pandas as pd
import pytest

from nhscope.config import ConfigManager, JobStatus, ScopeSettings
from nhscope.exceptions import InvalidInputError, NumericalFailureError, SweepPointError
from nhscope.job_manager import JobManager, exit_code_for
from nhscope.main import main, overrides_from_args, build_parser


@pytest.fixture
def manager():
    return JobManager(ConfigManager(ScopeSettings()))


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for name in ("NHSCOPE_THREADS", "NHSCOPE_LOG_LEVEL", "NHSCOPE_LOG_FILE", "NHSCOPE_REAL_TOL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("NHSCOPE_LOG_LEVEL", "WARNING")
    monkeypatch.chdir(tmp_path)


@pytest.mark.asyncio
async def test_bound_prints_value(capsys):
    assert await main(["bound", "--blocks", "3"]) == 0
    assert capsys.readouterr().out == "1.0\n"


@pytest.mark.asyncio
async def test_bound_needs_blocks(capsys):
    assert await main(["bound"]) == 2
    assert "blocks" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_two_level_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    code = await main(["sweep", "--model", "two_level", "--axis", "gamma", "--lo", "0.01", "--hi", "3",
                       "--steps", "300", "--output", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["param", "eta", "deta", "flag"]
    assert len(frame) == 300
    assert (tmp_path / "fig2.jumps.json").exists()
    summary = capsys.readouterr().out.strip().splitlines()
    assert len(summary) == 1
    assert summary[0].startswith("two_level over gamma: eta max")


@pytest.mark.asyncio
async def test_flags_and_config_file_give_identical_bytes(tmp_path):
    flags = ["sweep", "--model", "ssh", "--axis", "t1", "--lo", "0.1", "--hi", "1.2", "--steps", "40",
             "--cells", "20", "--t2", "1", "--g", "0.1"]
    assert await main(flags + ["--output", str(tmp_path / "flags.csv")]) == 0

    config = {
        "command": "sweep",
        "model": {"variant": "ssh", "params": {"t2": 1, "g": 0.1}, "cells": 20},
        "grid": {"axis": "t1", "lo": 0.1, "hi": 1.2, "steps": 40},
        "output": str(tmp_path / "file.csv"),
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(config), encoding="utf-8")
    assert await main(["--config", str(path)]) == 0
    assert (tmp_path / "flags.csv").read_bytes() == (tmp_path / "file.csv").read_bytes()


@pytest.mark.asyncio
async def test_thread_count_gives_identical_bytes(tmp_path, monkeypatch):
    flags = ["sweep", "--model", "ssh", "--lo", "0.1", "--hi", "1.2", "--steps", "40", "--cells", "20"]
    assert await main(flags + ["--output", str(tmp_path / "serial.csv")]) == 0
    monkeypatch.setenv("NHSCOPE_THREADS", "3")
    assert await main(flags + ["--output", str(tmp_path / "threaded.csv")]) == 0
    assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "threaded.csv").read_bytes()


@pytest.mark.asyncio
async def test_invalid_steps_exit_two(capsys):
    assert await main(["sweep", "--model", "two_level", "--lo", "0.1", "--hi", "1", "--steps", "1"]) == 2
    assert "grid.steps" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_bad_matrix_file_exit_two(tmp_path, capsys):
    path = tmp_path / "h.txt"
    path.write_text("dim 2\n0 1\n", encoding="utf-8")
    assert await main(["spectrum", "--matrix", str(path)]) == 2
    assert "non-square" in capsys.readouterr().err


@pytest.mark.asyncio
async def test_trivial_phase_edge_exit_three():
    assert await main(["edge", "--t1", "1.5", "--cells", "30"]) == 3


@pytest.mark.asyncio
async def test_bloch_writes_ep_report(tmp_path, capsys):
    out = tmp_path / "fig4.csv"
    assert await main(["bloch", "--u", "0.5", "--v", "0.8", "--w", "0.7", "--steps", "400",
                       "--output", str(out)]) == 0
    ep = json.loads((tmp_path / "fig4.ep.json").read_text(encoding="utf-8"))
    assert ep["exists"]
    assert ep["k_ep_plus"] == pytest.approx(math.acos(-11 / 14))
    frame = pd.read_csv(out)
    assert frame["param"].iloc[0] == pytest.approx(-3.141592653589793)
    assert "PT broken" in capsys.readouterr().out


def test_unknown_command_is_rejected_by_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["plot"])


def test_overrides_only_carry_set_flags():
    args = build_parser().parse_args(["sweep", "--L", "169", "--JR", "1", "--window", "5"])
    assert overrides_from_args(args) == {
        "command": "sweep",
        "model": {"size": 169, "JR": 1.0},
        "detector": {"w": 5},
    }


@pytest.mark.asyncio
async def test_spectrum_job(manager, tmp_path):
    config = ConfigManager.validate({
        "command": "spectrum",
        "model": {"variant": "two_level", "gamma": 0.25},
        "states": [0, 1],
        "output": str(tmp_path / "spec.csv"),
    })
    result = await manager.execute(config)
    assert result.status == JobStatus.COMPLETED
    assert result.exit_code == 0
    assert result.result_data["eta"] == pytest.approx(0.36, abs=1e-12)
    assert len(result.artifacts) == 3
    assert result.job_id in manager.job_results


@pytest.mark.asyncio
async def test_out_of_range_state(manager):
    config = ConfigManager.validate({"command": "spectrum", "model": {"variant": "two_level"}, "states": [5]})
    result = await manager.execute(config)
    assert result.status == JobStatus.FAILED
    assert result.exit_code == 2


@pytest.mark.asyncio
async def test_verify_sturm_liouville_job(manager, tmp_path):
    config = ConfigManager.validate({
        "command": "verify-sl",
        "model": {"variant": "sturm_liouville", "g": 1.5, "cells": 30},
        "output": str(tmp_path / "sl.json"),
    })
    result = await manager.execute(config)
    assert result.exit_code == 0
    assert json.loads((tmp_path / "sl.json").read_text(encoding="utf-8"))["passed"] is True


@pytest.mark.asyncio
async def test_edge_scan_job(manager, tmp_path):
    config = ConfigManager.validate({
        "command": "edge",
        "model": {"variant": "ssh", "t2": 1.0, "g": 0.0, "cells": 20},
        "grid": {"lo": 0.3, "hi": 0.6, "steps": 4},
        "output": str(tmp_path / "scan.csv"),
    })
    result = await manager.execute(config)
    assert result.exit_code == 0
    frame = pd.read_csv(tmp_path / "scan.csv")
    assert list(frame.columns) == ["t1", "overlap"]
    assert (frame["overlap"] < 0.1).all()
    assert result.result_data["transition"] is None


@pytest.mark.asyncio
async def test_finite_size_job(manager, tmp_path):
    config = ConfigManager.validate({
        "command": "finite-size",
        "model": {"variant": "ssh", "t2": 1.0, "g": 0.1},
        "grid": {"lo": 0.3, "hi": 0.85, "steps": 3},
        "sizes": [20, 30],
        "method": "overlap",
        "output": str(tmp_path / "fs.csv"),
    })
    result = await manager.execute(config)
    assert result.exit_code == 0
    assert list(pd.read_csv(tmp_path / "fs.csv")["L"]) == [20, 30]


@pytest.mark.asyncio
async def test_check_job(manager):
    config = ConfigManager.validate({"command": "check"})
    result = await manager.execute(config)
    assert result.exit_code == 0
    assert result.result_data["passed"] is True
    assert result.summary.startswith("7/7 checks passed")


def test_exit_codes():
    assert exit_code_for(InvalidInputError("x")) == 2
    assert exit_code_for(NumericalFailureError("x", dim=3)) == 3
    assert exit_code_for(SweepPointError(4, 0.5, NumericalFailureError("x", dim=3))) == 3
    assert exit_code_for(SweepPointError(4, 0.5, InvalidInputError("x"))) == 2
    assert exit_code_for(RuntimeError("x")) == 1
