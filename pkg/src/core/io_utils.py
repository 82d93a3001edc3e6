"""
raeperf - Output Helpers

Atomic CSV/JSON writers. Every file is written to a temporary sibling and
renamed into place, so an interrupted run never leaves a partial output.
"""

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Union

import numpy as np
import pandas as pd

from src.core.config import get_settings

logger = logging.getLogger(__name__)


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """
    Write text to ``path`` atomically.

    Args:
        path: Destination file
        text: Content to write

    Returns:
        The destination path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"Wrote {path}")
    return path


def round_significant(value: Any, digits: int) -> Any:
    """Round floats (recursively through lists and dicts) to ``digits`` significant digits."""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value) or value == 0.0:
            return value
        return float(f"{value:.{digits}g}")
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {k: round_significant(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(v, digits) for v in value]
    return value


def frame_to_csv_text(frame: pd.DataFrame) -> str:
    """Render a frame as CSV text with the configured float precision."""
    return frame.to_csv(index=False, float_format=get_settings().float_format, lineterminator="\n")


def write_frame_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    """Write a DataFrame to CSV atomically."""
    return atomic_write_text(path, frame_to_csv_text(frame))


def to_json_text(payload: Any) -> str:
    """Render a JSON-compatible payload with rounded floats."""
    rounded = round_significant(payload, get_settings().significant_digits)
    return json.dumps(rounded, indent=2, allow_nan=True) + "\n"


def write_json(payload: Any, path: Union[str, Path]) -> Path:
    """Write a JSON-compatible payload atomically."""
    return atomic_write_text(path, to_json_text(payload))
