# SPDX-License-Identifier: Apache-2.0
"""Wavenumber-domain coupling, EDoF, and ergodic capacity for XL-MIMO arrays."""

from ._core import (
    Aperture,
    ArrayGeometry,
    CapacityResult,
    Cell,
    CouplingSpectrum,
    EdofResult,
    EmccConfig,
    EmccEstimate,
    IoError,
    NumericError,
    RadiationPattern,
    ValidationError,
    WavenumberGrid,
    assemble_spatial_channel,
    basis_matrix,
    build_grid,
    capacity_with_edof_truncation,
    coupling_cos_power,
    coupling_general,
    draw_wavenumber_channel,
    edof_deterministic,
    edof_statistical,
    energy_prefix_count,
    ergodic_capacity,
    estimate_coupling,
    eta_upper_bound,
    transform_matrix,
)

__all__ = [
    "Aperture",
    "ArrayGeometry",
    "CapacityResult",
    "Cell",
    "CouplingSpectrum",
    "EdofResult",
    "EmccConfig",
    "EmccEstimate",
    "IoError",
    "NumericError",
    "RadiationPattern",
    "ValidationError",
    "WavenumberGrid",
    "assemble_spatial_channel",
    "basis_matrix",
    "build_grid",
    "capacity_with_edof_truncation",
    "coupling_cos_power",
    "coupling_general",
    "draw_wavenumber_channel",
    "edof_deterministic",
    "edof_statistical",
    "energy_prefix_count",
    "ergodic_capacity",
    "estimate_coupling",
    "eta_upper_bound",
    "transform_matrix",
]

__version__ = "0.1.0"
