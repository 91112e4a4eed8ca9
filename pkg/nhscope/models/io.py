"""
Text matrix format

    # comment
    dim 2
    0 0
    1 0.5-0.1i

Entries are written a+bi; `#` starts a comment line.
"""

import math
import re
from pathlib import Path
from typing import List, Union

import numpy as np

from nhscope.exceptions import IngestionError
from nhscope.logger import get_logger
from nhscope.models.base import Hamiltonian

logger = get_logger(__name__)

_DIM_LINE = re.compile(r"^dim\s+(\d+)$")


def parse_complex(token: str) -> complex:
    """Parse `a+bi`, `-2i`, `1`, `i` into a complex number"""
    if not token or "j" in token.lower():
        raise ValueError(f"not a complex entry: {token!r}")
    return complex(token.replace("i", "j").replace("I", "j"))


def format_complex(value: complex) -> str:
    re_part, im_part = float(np.real(value)), float(np.imag(value))
    if im_part == 0:
        return f"{re_part:.17g}"
    if re_part == 0:
        return f"{im_part:.17g}i"
    return f"{re_part:.17g}{im_part:+.17g}i"


def load_hamiltonian(path: Union[str, Path]) -> Hamiltonian:
    """Read a square complex matrix written in the text matrix format"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise IngestionError(f"matrix file not found: {path}") from None
    except UnicodeDecodeError as e:
        raise IngestionError(f"matrix file is not UTF-8: {e}") from e

    dim = None
    rows: List[List[complex]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dim is None:
            match = _DIM_LINE.match(line)
            if not match:
                raise IngestionError(f"expected 'dim <N>' header, got {line!r}", line=lineno)
            dim = int(match.group(1))
            if dim < 1:
                raise IngestionError("dimension must be >= 1", line=lineno)
            continue

        tokens = line.split()
        if len(rows) >= dim:
            raise IngestionError(f"non-square matrix: more than {dim} rows", line=lineno)
        if len(tokens) != dim:
            raise IngestionError(
                f"non-square matrix: row has {len(tokens)} entries, expected {dim}", line=lineno
            )
        row = []
        for token in tokens:
            try:
                value = parse_complex(token)
            except ValueError:
                raise IngestionError(f"cannot parse entry {token!r}", line=lineno) from None
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise IngestionError(f"non-finite entry {token!r}", line=lineno)
            row.append(value)
        rows.append(row)

    if dim is None:
        raise IngestionError("missing 'dim <N>' header", line=last_line or 1)
    if len(rows) != dim:
        raise IngestionError(f"non-square matrix: {len(rows)} rows, expected {dim}", line=last_line + 1)

    logger.debug(f"📥 Loaded {dim}x{dim} matrix from {path}")
    return Hamiltonian.external(np.array(rows, dtype=np.complex128))


def save_hamiltonian(hamiltonian: Hamiltonian, path: Union[str, Path]) -> Path:
    """Write a Hamiltonian in the text matrix format"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {hamiltonian.spec.variant.value}", f"dim {hamiltonian.dim}"]
    for row in hamiltonian.entries:
        lines.append(" ".join(format_complex(value) for value in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
