"""Construction and verification of projective, unitary, mixed-state and
simplex designs."""

from .errors import (CapacityError, ConstructionError, DimensionError, QDesignError,
                     UnsupportedError, UnverifiedDesignError, ValidationError)
from .moments import (DesignReport, FramePotential, MomentOperator, UnitarySet, delta_mixed,
                      frame_potential_projective, frame_potential_unitary, gamma, gamma_exact,
                      haar_trace_moment, omega, partial_trace_omega)
from .qstate import (BlochPoint, DensityMatrix, Ensemble, PureState, angle_spectrum,
                     bloch_point, overlap, partial_trace, purity, reduce_ensemble,
                     schmidt_vector)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConstructionError", "DimensionError", "QDesignError",
    "UnsupportedError", "UnverifiedDesignError", "ValidationError",
    "DesignReport", "FramePotential", "MomentOperator", "UnitarySet", "delta_mixed",
    "frame_potential_projective", "frame_potential_unitary", "gamma", "gamma_exact",
    "haar_trace_moment", "omega", "partial_trace_omega",
    "BlochPoint", "DensityMatrix", "Ensemble", "PureState", "angle_spectrum", "bloch_point",
    "overlap", "partial_trace", "purity", "reduce_ensemble", "schmidt_vector",
]
