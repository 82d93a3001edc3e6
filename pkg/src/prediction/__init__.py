"""
Prediction Module

This module provides code-distance sweeps, power-law scaling fits and the
end-to-end runtime prediction report comparing RAE with standard sampling.
"""

from .pipeline_manager import PredictionPipeline, build_report, load_series_file
from .power_law import PowerLawFit, extrapolate, fit_power_law
from .report import LabeledSeries, ReportConfig, RuntimePrediction, predict_label, report_json_schema
from .sweep import (
    Method,
    SweepPoint,
    crossover_error_rate,
    optimal_point,
    sweep,
    sweep_from_scaling,
    sweep_to_frame,
)

__all__ = [
    "Method",
    "SweepPoint",
    "sweep",
    "sweep_from_scaling",
    "sweep_to_frame",
    "optimal_point",
    "crossover_error_rate",
    "PowerLawFit",
    "fit_power_law",
    "extrapolate",
    "LabeledSeries",
    "ReportConfig",
    "RuntimePrediction",
    "predict_label",
    "report_json_schema",
    "PredictionPipeline",
    "build_report",
    "load_series_file",
]
