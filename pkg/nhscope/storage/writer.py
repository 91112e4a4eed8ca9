"""
Artifact writer: CSV tables through pandas, JSON reports
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from nhscope.analysis.edge import EdgeStatePair, ScanPoint
from nhscope.analysis.finite_size import FiniteSizePoint
from nhscope.logger import get_logger
from nhscope.petermann.detector import DiscontinuityReport
from nhscope.petermann.sweep import SweepResult
from nhscope.spectral.eigen import EigenSystem

logger = get_logger(__name__)

FLOAT_FORMAT = "%.15g"
PathLike = Union[str, Path]


def _jsonable(value: Any) -> Any:
    """Replace non-finite floats by None so the output stays strict JSON"""
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, (np.floating, float)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class ArtifactWriter:
    """Writes every artifact the CLI produces; output is byte-stable for identical inputs"""

    def __init__(self, fmt: str = "csv"):
        if fmt not in ("csv", "json"):
            raise ValueError(f"Unknown output format: {fmt}")
        self.fmt = fmt
        self.written: List[Path] = []

    @staticmethod
    def sidecar(path: PathLike, suffix: str) -> Path:
        """<stem>.<suffix>.json next to the main artifact"""
        path = Path(path)
        return path.with_name(f"{path.stem}.{suffix}.json")

    def _prepare(self, path: PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_json(self, payload: Dict[str, Any], path: PathLike) -> Path:
        path = self._prepare(path)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(_jsonable(payload), fh, indent=2, allow_nan=False)
            fh.write("\n")
        self.written.append(path)
        logger.info(f"💾 Wrote {path}")
        return path

    def write_table(self, frame: pd.DataFrame, path: PathLike) -> Path:
        if self.fmt == "json":
            return self.write_json({"records": frame.to_dict(orient="records")}, path)
        path = self._prepare(path)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        self.written.append(path)
        logger.info(f"💾 Wrote {path} ({len(frame)} rows)")
        return path

    def write_sweep(self, sw: SweepResult, reports: Sequence[DiscontinuityReport], path: PathLike) -> Path:
        """Sweep table; discontinuity reports go inline (json) or to <stem>.jumps.json (csv)"""
        frame = sw.to_frame()
        payload = {"reports": [report.to_dict() for report in reports]}
        if self.fmt == "json":
            return self.write_json({
                "model": sw.model.to_dict(),
                "axis": sw.axis,
                "records": frame.to_dict(orient="records"),
                **payload,
            }, path)
        self.write_json(payload, self.sidecar(path, "jumps"))
        return self.write_table(frame, path)

    def write_spectrum(self, es: EigenSystem, path: PathLike) -> Path:
        return self.write_table(pd.DataFrame({
            "index": np.arange(len(es.eigenvalues)),
            "re_E": es.eigenvalues.real,
            "im_E": es.eigenvalues.imag,
        }), path)

    def write_eigenvectors(self, es: EigenSystem, states: Iterable[int], path: PathLike) -> List[Path]:
        """One table per selected state: <stem>.state<n>.<ext>"""
        path = Path(path)
        written = []
        for n in states:
            vector = es.right[:, n]
            target = path.with_name(f"{path.stem}.state{n}{path.suffix or '.' + self.fmt}")
            written.append(self.write_table(pd.DataFrame({
                "site": np.arange(len(vector)),
                "re_psi": vector.real,
                "im_psi": vector.imag,
                "abs2": np.abs(vector) ** 2,
            }), target))
        return written

    def write_edge_states(self, pair: EdgeStatePair, path: PathLike) -> Path:
        return self.write_table(pd.DataFrame({
            "site": np.arange(len(pair.stateL)),
            "abs2_state1": np.abs(pair.stateL) ** 2,
            "abs2_state2": np.abs(pair.stateR) ** 2,
        }), path)

    def write_edge_scan(self, points: Sequence[ScanPoint], path: PathLike) -> Path:
        return self.write_table(pd.DataFrame(list(points), columns=["t1", "overlap"]), path)

    def write_finite_size(self, points: Sequence[FiniteSizePoint], path: PathLike) -> Path:
        return self.write_table(pd.DataFrame({
            "L": [point.size for point in points],
            "t1_star": [point.t1_star if point.t1_star is not None else np.nan for point in points],
        }), path)

    def write_report(self, payload: Dict[str, Any], path: PathLike, sidecar: Optional[str] = None) -> Path:
        target = self.sidecar(path, sidecar) if sidecar else path
        return self.write_json(payload, target)
