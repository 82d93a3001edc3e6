"""
Prediction Pipeline Manager

This module implements the PredictionPipeline class for orchestrating
runtime predictions over several labelled Hamiltonian series. Labels are
independent, so they are processed concurrently and returned in input order.
"""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.core.config import get_settings
from src.core.exceptions import ConfigurationError
from src.hamiltonians.hamiltonian_parser import load_hamiltonian
from src.prediction.report import LabeledSeries, ReportConfig, RuntimePrediction, predict_label

logger = logging.getLogger(__name__)


class SeriesEntry(BaseModel):
    """One Hamiltonian file of a series."""

    model_config = ConfigDict(extra="forbid")

    path: Path
    num_qubits: Optional[int] = Field(None, ge=1)


class SeriesSpec(BaseModel):
    """A labelled series as written in a series file."""

    model_config = ConfigDict(extra="forbid")

    label: str = Field(min_length=1)
    target_qubits: Optional[int] = Field(None, ge=4)
    hamiltonians: List[SeriesEntry] = Field(min_length=1)


class SeriesDocument(BaseModel):
    """Top-level series file: ``{"series": [...]}``."""

    model_config = ConfigDict(extra="forbid")

    series: List[SeriesSpec] = Field(min_length=1)


def load_series_file(path: Union[str, Path]) -> List[LabeledSeries]:
    """
    Load labelled series from a JSON series file.

    Hamiltonian paths are resolved relative to the series file.

    Args:
        path: Series file

    Returns:
        LabeledSeries in file order
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Series file not found: {path}")
    try:
        document = SeriesDocument.model_validate(json.loads(path.read_text()))
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Series file {path} is not valid JSON: {e}") from e
    except ValidationError as e:
        raise ConfigurationError(f"Invalid series file {path}: {e}") from e

    labels = [series.label for series in document.series]
    if len(set(labels)) != len(labels):
        raise ConfigurationError(f"Series labels must be unique: {labels}")

    result = []
    for series in document.series:
        hamiltonians = []
        for entry in series.hamiltonians:
            hamiltonian_path = entry.path if entry.path.is_absolute() else path.parent / entry.path
            hamiltonian = load_hamiltonian(hamiltonian_path)
            if entry.num_qubits is not None and entry.num_qubits != hamiltonian.num_qubits:
                raise ConfigurationError(
                    f"{hamiltonian_path} has {hamiltonian.num_qubits} qubits, series declares {entry.num_qubits}"
                )
            hamiltonians.append(hamiltonian)
        result.append(LabeledSeries(series.label, tuple(hamiltonians), series.target_qubits))
    return result


class PredictionPipeline:
    """Runs runtime predictions for several labelled series."""

    def __init__(self, config: ReportConfig, max_workers: Optional[int] = None):
        """
        Initialize PredictionPipeline.

        Args:
            config: Report configuration shared by all labels
            max_workers: Maximum number of labels processed concurrently
        """
        self.config = config
        self.max_workers = max_workers or get_settings().max_workers
        logger.info(f"PredictionPipeline initialized with {self.max_workers} workers")

    def _predict(self, series: LabeledSeries) -> RuntimePrediction:
        started = time.perf_counter()
        try:
            prediction = predict_label(series, self.config, workers=1)
        except Exception as e:
            logger.error(f"Prediction failed for '{series.label}': {str(e)}")
            raise
        logger.info(
            f"'{series.label}': RAE {prediction.rae_runtime:.4g}s at d={prediction.rae_distance}, "
            f"VQE {prediction.vqe_runtime:.4g}s at d={prediction.vqe_distance}, "
            f"ratio {prediction.runtime_ratio:.4g} ({time.perf_counter() - started:.2f}s)"
        )
        return prediction

    def run(self, series: Sequence[LabeledSeries]) -> List[RuntimePrediction]:
        """
        Predict every label.

        Args:
            series: Labelled series

        Returns:
            Predictions in input order
        """
        if not series:
            raise ConfigurationError("No series to report on")
        if self.max_workers == 1 or len(series) == 1:
            return [self._predict(s) for s in series]
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(self._predict, series))


def build_report(
    series: Sequence[LabeledSeries], config: ReportConfig, workers: Optional[int] = None
) -> List[RuntimePrediction]:
    """Runtime predictions for each labelled series, in input order."""
    return PredictionPipeline(config, max_workers=workers).run(series)
