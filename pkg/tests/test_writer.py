import json

import numpy as np
import pandas as pd
import pytest

from nhscope.analysis import FiniteSizePoint, analytic_edge_states
from nhscope.config import ModelSpec, ScopeSettings
from nhscope.models import build_two_level
from nhscope.petermann import annotate_discontinuities, sweep
from nhscope.spectral import eig_right
from nhscope.storage import ArtifactWriter


@pytest.fixture(scope="module")
def two_level_sweep():
    sw = sweep(ModelSpec.default("two_level"), "gamma", 0.01, 3.0, 60, settings=ScopeSettings())
    return sw, annotate_discontinuities(sw)


def test_sweep_csv_with_jumps_sidecar(tmp_path, two_level_sweep):
    sw, reports = two_level_sweep
    writer = ArtifactWriter("csv")
    path = writer.write_sweep(sw, reports, tmp_path / "fig2.csv")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "param,eta,deta,flag"
    frame = pd.read_csv(path)
    assert len(frame) == 60
    np.testing.assert_allclose(frame["eta"], sw.etas, rtol=1e-14)
    sidecar = json.loads((tmp_path / "fig2.jumps.json").read_text(encoding="utf-8"))
    assert [report["kind"] for report in sidecar["reports"]] == ["eta", "deta"]
    assert len(writer.written) == 2


def test_sweep_json_is_one_file(tmp_path, two_level_sweep):
    sw, reports = two_level_sweep
    writer = ArtifactWriter("json")
    path = writer.write_sweep(sw, reports, tmp_path / "fig2.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["axis"] == "gamma"
    assert data["model"]["variant"] == "two_level"
    assert len(data["records"]) == 60
    assert not (tmp_path / "fig2.jumps.json").exists()


def test_identical_inputs_give_identical_bytes(tmp_path, two_level_sweep):
    sw, reports = two_level_sweep
    first = ArtifactWriter().write_sweep(sw, reports, tmp_path / "a.csv").read_bytes()
    second = ArtifactWriter().write_sweep(sw, reports, tmp_path / "b.csv").read_bytes()
    assert first == second


def test_spectrum_and_eigenvectors(tmp_path):
    es = eig_right(build_two_level(0.25))
    writer = ArtifactWriter()
    spectrum = pd.read_csv(writer.write_spectrum(es, tmp_path / "spec.csv"))
    assert list(spectrum.columns) == ["index", "re_E", "im_E"]
    np.testing.assert_allclose(spectrum["re_E"], [-0.5, 0.5])
    paths = writer.write_eigenvectors(es, [1], tmp_path / "spec.csv")
    assert [p.name for p in paths] == ["spec.state1.csv"]
    vector = pd.read_csv(paths[0])
    assert list(vector.columns) == ["site", "re_psi", "im_psi", "abs2"]
    assert vector["abs2"].sum() == pytest.approx(1.0)


def test_edge_and_finite_size_tables(tmp_path):
    writer = ArtifactWriter()
    pair = analytic_edge_states(0.5, 1.0, 0.1, 10)
    edge = pd.read_csv(writer.write_edge_states(pair, tmp_path / "edge.csv"))
    assert list(edge.columns) == ["site", "abs2_state1", "abs2_state2"]
    assert len(edge) == 20

    scan = writer.write_edge_scan([(0.1, 0.01), (0.2, 0.95)], tmp_path / "scan.csv")
    assert scan.read_text(encoding="utf-8").splitlines() == ["t1,overlap", "0.1,0.01", "0.2,0.95"]

    points = [FiniteSizePoint(50, 0.61, "eta"), FiniteSizePoint(100, None, "overlap")]
    table = writer.write_finite_size(points, tmp_path / "fs.csv")
    assert table.read_text(encoding="utf-8").splitlines() == ["L,t1_star", "50,0.61", "100,"]


def test_json_replaces_non_finite_values(tmp_path):
    path = ArtifactWriter().write_json({"gap": float("inf"), "values": [np.float64(0.5), float("nan")]},
                                       tmp_path / "out" / "report.json")
    assert json.loads(path.read_text(encoding="utf-8")) == {"gap": None, "values": [0.5, None]}


def test_unknown_format():
    with pytest.raises(ValueError):
        ArtifactWriter("xlsx")
