"""Exact algebra and combinatorics for determinantal complexity and Kronecker positivity."""

from .errors import ResourceCapError
from .kronecker import kron, kron_oracle, kron_rect, obstruction_search, stretch_probe
from .partitions import character, conjugate, enumerate_partitions
from .symfun import outer_plethysm_h_h, pleth

__version__ = "0.1.0"

__all__ = [
    "ResourceCapError",
    "character",
    "conjugate",
    "enumerate_partitions",
    "kron",
    "kron_oracle",
    "kron_rect",
    "obstruction_search",
    "outer_plethysm_h_h",
    "pleth",
    "stretch_probe",
]
