"""Bistable membrane memcapacitor circuit simulator.

Thin package wrapper around the compiled extension; everything public
lives in ``memcap._core``.
"""

from memcap._core import (  # noqa: F401
    UNSETTLED_MARK,
    CircuitState,
    DeviceParams,
    Dimensionless,
    LogicBit,
    MembraneState,
    NotCurvePoint,
    OperationMap,
    PhysicalParams,
    PulseSpec,
    SimConfig,
    Topology,
    Trajectory,
    TruthTableResult,
    binarize,
    capacitance,
    code_name,
    compute_code,
    divider_reduced,
    divider_triple,
    init_state,
    integrate,
    not_search,
    potential_energy,
    pulse_value,
    rhs,
    rhs_resistive,
    sensitivity_flags,
    single_shot,
    sweep_map,
    to_dimensionless,
    truth_table,
)

__version__ = "0.1.0"
