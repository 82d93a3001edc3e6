"""
Resources Module

This module provides the RAE runtime model and term allocation, circuit and
surface-code cost models, and the standard-sampling baseline.
"""

from .circuit_costs import CircuitCosts, Connectivity, circuit_costs, layer_decay, layer_time
from .fault_tolerance import (
    CodePoint,
    SurfaceCodeParams,
    approximate_gate_error,
    code_point,
    distance_for_error,
    physical_qubits,
)
from .runtime_model import (
    AllocationResult,
    RuntimeModelParams,
    allocate,
    ansatz_queries,
    per_term_runtime,
    runtime_model,
    uniform_allocation,
    uniform_allocation_runtime,
)
from .standard_sampling import (
    StandardSamplingEstimate,
    mitigation_overhead,
    runtime_constant_K,
    sample_pauli_estimate,
    standard_runtime,
    standard_runtime_from_K,
)

__all__ = [
    "RuntimeModelParams",
    "AllocationResult",
    "runtime_model",
    "per_term_runtime",
    "allocate",
    "uniform_allocation",
    "uniform_allocation_runtime",
    "ansatz_queries",
    "Connectivity",
    "CircuitCosts",
    "circuit_costs",
    "layer_decay",
    "layer_time",
    "SurfaceCodeParams",
    "CodePoint",
    "code_point",
    "distance_for_error",
    "physical_qubits",
    "approximate_gate_error",
    "StandardSamplingEstimate",
    "runtime_constant_K",
    "mitigation_overhead",
    "standard_runtime",
    "standard_runtime_from_K",
    "sample_pauli_estimate",
]
