"""TE Maxwell waves in vacuum/Drude stratified media.

Library layout:

- ``media``       material laws and derived spectral constants
- ``zones``       spectral-zone classification and transverse roots
- ``modes``       generalized eigenfunctions and slab mode profiles
- ``dispersion``  slab dispersion curves, thresholds, critical points
- ``operator1d``  discrete self-adjoint realization of the reduced operator
- ``dynamics``    wave packets, decay fits, resonance and limiting-amplitude runs
- ``cli``         configuration-driven command line front end
"""

from .media import DrudeMedium, DerivedConstants, derived_constants, permeability, permittivity
from .zones import (
    SpectralPoint,
    TransverseRoots,
    ZoneLabel,
    bilayer_dispersion_value,
    branch_index_set,
    classify_zone,
    dispersion_squares,
    plasmonic_curve,
    plasmonic_inverse_and_jacobian,
    transverse_roots,
)

__all__ = [
    "DrudeMedium",
    "DerivedConstants",
    "derived_constants",
    "permittivity",
    "permeability",
    "SpectralPoint",
    "ZoneLabel",
    "TransverseRoots",
    "dispersion_squares",
    "classify_zone",
    "transverse_roots",
    "bilayer_dispersion_value",
    "plasmonic_curve",
    "plasmonic_inverse_and_jacobian",
    "branch_index_set",
]

__version__ = "0.1.0"
