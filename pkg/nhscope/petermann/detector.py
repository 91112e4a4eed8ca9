"""
Jump detection on sampled series

Interval i (between grid[i] and grid[i+1]) is flagged when
|d_i| > max(floor, kappa * median{|d_j| : 0 < |i-j| <= w}) with d_i = s[i+1] - s[i].
Runs of adjacent flagged intervals collapse to their largest jump.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from nhscope.exceptions import InvalidInputError
from nhscope.logger import get_logger

logger = get_logger(__name__)

DEFAULT_WINDOW = 10
DEFAULT_KAPPA = 10.0
DEFAULT_ETA_FLOOR = 1e-3
DEFAULT_DETA_FLOOR_FRACTION = 1e-2

Location = Tuple[float, float, float]


@dataclass
class DiscontinuityReport:
    """Detected jumps: (param_left, param_right, jump_magnitude) per location"""
    kind: str
    locations: List[Location] = field(default_factory=list)
    detector: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "locations": [
                {"param_left": left, "param_right": right, "jump_magnitude": jump}
                for left, right, jump in self.locations
            ],
            "detector": dict(self.detector),
        }


def detect_discontinuities(series: Sequence[float],
                           grid: Sequence[float],
                           w: int = DEFAULT_WINDOW,
                           kappa: float = DEFAULT_KAPPA,
                           floor: float = DEFAULT_ETA_FLOOR,
                           kind: str = "eta") -> DiscontinuityReport:
    values = np.asarray(series, dtype=float)
    points = np.asarray(grid, dtype=float)
    if values.shape != points.shape or values.ndim != 1:
        raise InvalidInputError(f"series and grid lengths differ: {values.shape} vs {points.shape}")
    if w < 1:
        raise InvalidInputError(f"window w must be >= 1, got {w}")
    if len(values) < 2 * w + 2:
        raise InvalidInputError(f"series of length {len(values)} is too short for window w={w} "
                                f"(needs >= {2 * w + 2})")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("series contains non-finite values")

    magnitudes = np.abs(np.diff(values))
    count = len(magnitudes)
    flagged = []
    for i in range(count):
        neighbors = np.concatenate([magnitudes[max(0, i - w):i], magnitudes[i + 1:min(count, i + w + 1)]])
        threshold = max(floor, kappa * float(np.median(neighbors)))
        if magnitudes[i] > threshold:
            flagged.append(i)

    locations: List[Location] = []
    run: List[int] = []
    for i in flagged + [None]:
        if run and (i is None or i != run[-1] + 1):
            peak = max(run, key=lambda j: magnitudes[j])
            locations.append((float(points[peak]), float(points[peak + 1]), float(magnitudes[peak])))
            run = []
        if i is not None:
            run.append(i)

    report = DiscontinuityReport(
        kind=kind,
        locations=locations,
        detector={"w": int(w), "kappa": float(kappa), "floor": float(floor)},
    )
    if locations:
        logger.info(f"⚡ {len(locations)} {kind} discontinuit{'y' if len(locations) == 1 else 'ies'} at "
                    + ", ".join(f"[{left:.6g}, {right:.6g}]" for left, right, _ in locations))
    return report
