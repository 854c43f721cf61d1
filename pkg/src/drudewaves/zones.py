"""Spectral zones of the (k, omega) plane for the vacuum/Drude bilayer.

For a transverse wavenumber k and frequency omega, the squared x-wavenumbers

    d_minus = k**2 - eps0 * mu0 * omega**2          (vacuum side)
    d_plus  = k**2 - eps(omega) * mu(omega) * omega**2   (Drude side)

decide whether a generalized mode oscillates (d < 0) or decays (d > 0) on each
side.  The sign pattern, together with the sign of the Drude coefficients
(direct vs inverse propagation), partitions the quadrant into the surface
zones DD, DI, EI, DE plus the one-dimensional plasmonic curve EE where both
sides are evanescent and the interface supports a guided wave.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .media import DrudeMedium, derived_constants, permeability, permittivity

__all__ = [
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

# Half-width of the numerical band around the measure-zero sets: the EE curve
# (in omega, scaled by omega_m) and the spectral cuts (in k, scaled by the
# light-cone wavenumber at omega_m).
EE_ATOL_FACTOR = 1e-10
CUT_ATOL_FACTOR = 1e-10

# Jacobian values beyond this are reported as the +inf sentinel.
JACOBIAN_SENTINEL = 1e12


@dataclass(frozen=True)
class SpectralPoint:
    """A point (k, omega) of the spectral plane."""

    k: float
    omega: float

    def __post_init__(self):
        if not (np.isfinite(self.k) and np.isfinite(self.omega)):
            raise ValueError("k and omega must be finite")


class ZoneLabel(enum.Enum):
    DD = "DD"
    DI = "DI"
    EI = "EI"
    DE = "DE"
    EE = "EE"
    EVANESCENT_BOTH = "EvanescentBoth"
    BOUNDARY = "Boundary"
    STATIONARY = "Stationary"


# Admissible mode-branch indices per zone: +1/-1 pick the half-plane carrying
# the transmitted wave, 0 is the interface-guided branch.
_BRANCHES = {
    ZoneLabel.DD: (-1, 1),
    ZoneLabel.DI: (-1, 1),
    ZoneLabel.DE: (1,),
    ZoneLabel.EI: (-1,),
    ZoneLabel.EE: (0,),
}


def branch_index_set(zone: ZoneLabel) -> tuple[int, ...]:
    """Mode-branch indices j available in a zone (empty if none)."""
    return _BRANCHES.get(zone, ())


@dataclass(frozen=True)
class TransverseRoots:
    """Signed square roots of the transverse dispersion squares.

    Each root is either purely imaginary (propagative side) or non-negative
    real (evanescent side); ``xi**2`` recovers the corresponding ``d`` value.
    """

    xi_minus: complex
    xi_plus: complex
    d_minus: float
    d_plus: float


def dispersion_squares(medium: DrudeMedium, point: SpectralPoint) -> tuple[float, float]:
    """Squared transverse wavenumbers (d_minus, d_plus) at ``point``."""
    if point.omega == 0.0:
        raise ValueError("dispersion squares are singular at omega = 0")
    k, w = point.k, point.omega
    d_minus = k * k - medium.eps0 * medium.mu0 * w * w
    d_plus = k * k - permittivity(medium, w) * permeability(medium, w) * w * w
    return float(d_minus), float(d_plus)


def _sign_zone(medium: DrudeMedium, point: SpectralPoint) -> ZoneLabel:
    """Classification by the strict signs of (d_minus, d_plus) only.

    Boundary bands and the EE curve are ignored; points with d >= 0 on both
    sides come back as EVANESCENT_BOTH.  This is the convention the root
    formulas key on, so it is also used for points that sit exactly on a cut.
    """
    d_minus, d_plus = dispersion_squares(medium, point)
    w = abs(point.omega)
    if d_minus < 0.0 and d_plus < 0.0:
        # Propagative on both sides; the Drude side is direct above both
        # plasma frequencies and inverse below both (mixed signs force d_plus > 0).
        if w > max(medium.omega_e, medium.omega_m):
            return ZoneLabel.DD
        return ZoneLabel.DI
    if d_minus < 0.0:
        return ZoneLabel.DE
    if d_plus < 0.0:
        return ZoneLabel.EI
    return ZoneLabel.EVANESCENT_BOTH


def classify_zone(medium: DrudeMedium, point: SpectralPoint) -> ZoneLabel:
    """Full zone label of ``point``, symmetric under (k, w) -> (|k|, |w|).

    Stationary frequencies {0, +-omega_m} and narrow bands around the spectral
    cuts and the plasmonic curve get their own labels; everything else is
    classified by the sign pattern of the dispersion squares.
    """
    k, w = abs(point.k), abs(point.omega)
    wm = medium.omega_m
    atol_w = EE_ATOL_FACTOR * wm
    if w <= atol_w or abs(w - wm) <= atol_w:
        return ZoneLabel.STATIONARY

    cons = derived_constants(medium)
    atol_k = CUT_ATOL_FACTOR * np.sqrt(medium.eps0 * medium.mu0) * wm

    # Plasmonic curve: |w| = omega_E(k) for |k| > kappa_c.
    if k > cons.kappa_c + atol_k:
        if abs(w - plasmonic_curve(medium, k)) <= atol_w:
            return ZoneLabel.EE

    # Spectral cuts, measured as a signed k-distance to avoid sqrt cancellation.
    d_minus, d_plus = dispersion_squares(medium, SpectralPoint(k, w))
    k0 = np.sqrt(medium.eps0 * medium.mu0) * w
    if abs(d_minus) <= atol_k * (k + k0):
        return ZoneLabel.BOUNDARY
    em = permittivity(medium, w) * permeability(medium, w)
    if em >= 0.0:
        k_cut = np.sqrt(em) * w
        if abs(d_plus) <= atol_k * (k + k_cut):
            return ZoneLabel.BOUNDARY

    return _sign_zone(medium, SpectralPoint(k, w))


def transverse_roots(medium: DrudeMedium, point: SpectralPoint) -> TransverseRoots:
    """Signed square roots xi_minus, xi_plus of the dispersion squares.

    The root is -i*sgn(w)*sqrt(|d|) where the side carries an outgoing
    propagative wave, +i*sgn(w)*sqrt(|d|) on the Drude side of the inverse
    zones (where phase and group velocities oppose), and the positive real
    root on evanescent sides.
    """
    w = point.omega
    wm = medium.omega_m
    atol_w = EE_ATOL_FACTOR * wm
    if abs(w) <= atol_w or abs(abs(w) - wm) <= atol_w:
        raise ValueError("transverse roots are undefined at the stationary frequencies 0, +-omega_m")
    d_minus, d_plus = dispersion_squares(medium, point)
    zone = _sign_zone(medium, SpectralPoint(abs(point.k), abs(w)))
    sgn = 1.0 if w > 0 else -1.0

    if zone in (ZoneLabel.DD, ZoneLabel.DI, ZoneLabel.DE):
        xi_minus = -1j * sgn * np.sqrt(abs(d_minus))
    else:
        xi_minus = complex(np.sqrt(abs(d_minus)))

    if zone in (ZoneLabel.EI, ZoneLabel.DI):
        xi_plus = +1j * sgn * np.sqrt(abs(d_plus))
    elif zone is ZoneLabel.DD:
        xi_plus = -1j * sgn * np.sqrt(abs(d_plus))
    else:
        xi_plus = complex(np.sqrt(abs(d_plus)))

    return TransverseRoots(xi_minus=complex(xi_minus), xi_plus=complex(xi_plus),
                           d_minus=d_minus, d_plus=d_plus)


def bilayer_dispersion_value(medium: DrudeMedium, point: SpectralPoint) -> complex:
    """Interface mismatch xi_minus/mu_minus + xi_plus/mu_plus.

    Zeros of this quantity on the evanescent-evanescent region are the
    plasmonic interface modes.  Undefined at the stationary frequencies
    (where mu_plus vanishes or the roots degenerate).
    """
    roots = transverse_roots(medium, point)
    mu_plus = permeability(medium, point.omega)
    if mu_plus == 0.0:
        raise ValueError("mu_plus vanishes; dispersion value undefined")
    return roots.xi_minus / medium.mu0 + roots.xi_plus / mu_plus


def plasmonic_curve(medium: DrudeMedium, k):
    """Frequency omega_E(k) > 0 of the interface-guided (plasmonic) mode.

    Defined for |k| >= kappa_c.  In the degenerate case omega_e == omega_m the
    curve is flat at omega_m/sqrt(2); otherwise it runs monotonically from the
    cross-point frequency omega_c to that value.  Evaluated in a cancellation
    free form so large |k| stays accurate.
    """
    cons = derived_constants(medium)
    k_arr = np.abs(np.asarray(k, dtype=float))
    if np.any(k_arr < cons.kappa_c * (1.0 - 1e-12)):
        raise ValueError("plasmonic curve is only defined for |k| >= kappa_c")
    wm, we = medium.omega_m, medium.omega_e
    if cons.critical:
        value = np.full_like(k_arr, wm / np.sqrt(2.0))
        return value if value.ndim else float(value)
    big_k = medium.eps0 * medium.mu0 * (wm * wm - we * we)
    u = np.abs(k_arr * k_arr / big_k)
    # 1/2 + u - sqrt(1/4 + u^2) == 1/2 - (1/4) / (sqrt(1/4 + u^2) + u)
    shrink = 0.25 / (np.sqrt(0.25 + u * u) + u)
    value = wm * np.sqrt(0.5 - np.sign(big_k) * shrink)
    return value if value.ndim else float(value)


def plasmonic_inverse_and_jacobian(medium: DrudeMedium, omega: float) -> tuple[float, float]:
    """Inverse k_E(omega) of the plasmonic curve and the Jacobian |dk_E/domega|.

    Defined for a non-degenerate medium and |omega| strictly inside the band
    (min(omega_p, omega_c), max(omega_p, omega_c)).  The Jacobian diverges at
    the flat asymptote omega_p; values beyond 1e12 are reported as +inf.
    """
    cons = derived_constants(medium)
    if cons.critical:
        raise ValueError("plasmonic curve is flat for omega_e == omega_m; no inverse exists")
    w = abs(float(omega))
    lo, hi = sorted((cons.omega_p, cons.omega_c))
    if not (lo < w < hi):
        raise ValueError(f"|omega| = {w} outside the plasmonic band ({lo}, {hi})")
    wm, we = medium.omega_m, medium.omega_e
    big_k = medium.eps0 * medium.mu0 * (wm * wm - we * we)
    ratio = (w / wm) ** 2
    # Closed-form inversion of the curve; the analytic root simplifies to
    # k^2 = K * W(1-W)/(1-2W) with W = (omega/omega_m)^2.
    k_sq = big_k * ratio * (1.0 - ratio) / (1.0 - 2.0 * ratio)
    if not k_sq > 0.0:
        raise ValueError("inversion failed: non-positive k^2 (omega outside the band?)")
    k_val = float(np.sqrt(k_sq))
    if not np.isclose(plasmonic_curve(medium, k_val), w, rtol=1e-10, atol=0.0):
        k_val = _bisect_inverse(medium, w, cons.kappa_c)
    g_prime = (1.0 - 2.0 * ratio + 2.0 * ratio * ratio) / (1.0 - 2.0 * ratio) ** 2
    jac = abs(big_k * g_prime * w / (wm * wm * k_val))
    if jac > JACOBIAN_SENTINEL:
        jac = np.inf
    return k_val, float(jac)


def _bisect_inverse(medium: DrudeMedium, w: float, kappa_c: float) -> float:
    """Safeguarded bisection fallback for k_E near the asymptote."""
    lo, hi = kappa_c, 1e6 * kappa_c
    increasing = medium.omega_m > medium.omega_e
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (plasmonic_curve(medium, mid) < w) == increasing:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-14 * hi:
            break
    return 0.5 * (lo + hi)
