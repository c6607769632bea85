"""linkforge: compile polynomial systems into planar linkage hardware and
verify the geometry (noncrossing, feature size, angle windows, rigidity)
at desk scale."""

from __future__ import annotations

from .exactnum import QuadCoord, SQRT3, SQRT11, SQRT33
from .model import (
    AngleCon,
    CombinatorialEmbedding,
    Configuration,
    Edge,
    Linkage,
    NXCon,
    RigidCon,
    SliceCon,
    ValidationReport,
    agrees_with_embedding,
    min_feature_size,
    offset,
    validate_configuration,
)
from .parameters import ParameterSet, compute_parameters, toy_parameters

__all__ = [
    "QuadCoord", "SQRT3", "SQRT11", "SQRT33",
    "AngleCon", "CombinatorialEmbedding", "Configuration", "Edge", "Linkage",
    "NXCon", "RigidCon", "SliceCon", "ValidationReport",
    "agrees_with_embedding", "min_feature_size", "offset", "validate_configuration",
    "ParameterSet", "compute_parameters", "toy_parameters",
]

__version__ = "0.1.0"
