"""Material dispersion laws of the vacuum/Drude pair and derived spectral constants.

The two half-media are the vacuum (constant eps0, mu0) and a lossless Drude
material whose permittivity and permeability are

    eps(w) = eps0 * (1 - omega_e**2 / w**2),
    mu(w)  = mu0  * (1 - omega_m**2 / w**2).

Both are even in the frequency and negative below their plasma frequency, so
the Drude side behaves as a negative-index material on 0 < |w| < min(omega_e,
omega_m).  Everything downstream (spectral zones, guided modes, the discrete
operator) is built on top of these two rational functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DrudeMedium",
    "DerivedConstants",
    "permittivity",
    "permeability",
    "derived_constants",
]

# Relative tolerance deciding whether omega_e == omega_m.  The degenerate case
# changes the structure of the spectrum, so it must not be triggered by
# rounding; callers may force the flag instead.
CRITICAL_RTOL = 1e-12


@dataclass(frozen=True)
class DrudeMedium:
    """Physical constants of the vacuum/Drude pair.

    Parameters
    ----------
    omega_e, omega_m:
        Electric and magnetic plasma frequencies of the Drude material (rad/s).
    eps0, mu0:
        Vacuum permittivity and permeability.  Default to the normalized unit
        system eps0 = mu0 = 1 (c = 1); SI values are accepted.
    slab_half_width:
        Half-width L of the Drude slab; only the slab geometry reads it.
    """

    omega_e: float
    omega_m: float
    eps0: float = 1.0
    mu0: float = 1.0
    slab_half_width: float = 1.0

    def __post_init__(self):
        for name in ("omega_e", "omega_m", "eps0", "mu0", "slab_half_width"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def light_speed(self) -> float:
        return 1.0 / np.sqrt(self.eps0 * self.mu0)


@dataclass(frozen=True)
class DerivedConstants:
    """Spectral constants derived from a :class:`DrudeMedium`."""

    c: float
    omega_p: float
    omega_c: float
    kappa_c: float
    sigma_exc: tuple[float, ...]
    critical: bool


def permittivity(medium: DrudeMedium, omega, side: str = "drude"):
    """Permittivity at frequency ``omega`` on one side of the interface.

    ``side`` is ``"vacuum"`` or ``"drude"``.  Scalar or array ``omega``.
    Raises ``ValueError`` at omega = 0 on the Drude side (pole of the law).
    """
    omega = np.asarray(omega, dtype=float)
    if side == "vacuum":
        return medium.eps0 * np.ones_like(omega) if omega.ndim else medium.eps0
    if side != "drude":
        raise ValueError(f"side must be 'vacuum' or 'drude', got {side!r}")
    if np.any(omega == 0.0):
        raise ValueError("Drude permittivity is singular at omega = 0")
    value = medium.eps0 * (1.0 - (medium.omega_e / omega) ** 2)
    return value if value.ndim else float(value)


def permeability(medium: DrudeMedium, omega, side: str = "drude"):
    """Permeability at frequency ``omega``; mirror of :func:`permittivity`.

    The Drude value is negative exactly on 0 < |omega| < omega_m.
    """
    omega = np.asarray(omega, dtype=float)
    if side == "vacuum":
        return medium.mu0 * np.ones_like(omega) if omega.ndim else medium.mu0
    if side != "drude":
        raise ValueError(f"side must be 'vacuum' or 'drude', got {side!r}")
    if np.any(omega == 0.0):
        raise ValueError("Drude permeability is singular at omega = 0")
    value = medium.mu0 * (1.0 - (medium.omega_m / omega) ** 2)
    return value if value.ndim else float(value)


def derived_constants(medium: DrudeMedium, force_critical: bool | None = None) -> DerivedConstants:
    """Derived frequencies: plasmonic omega_p, cross point (kappa_c, omega_c),
    the exceptional set, and the critical flag.

    ``force_critical`` overrides the relative-tolerance detection of
    omega_e == omega_m.
    """
    we, wm = medium.omega_e, medium.omega_m
    c = medium.light_speed
    omega_p = wm / np.sqrt(2.0)
    omega_c = we * wm / np.hypot(we, wm)
    kappa_c = np.sqrt(medium.eps0 * medium.mu0) * omega_c
    if force_critical is None:
        critical = abs(we - wm) <= CRITICAL_RTOL * max(we, wm)
    else:
        critical = bool(force_critical)
    if critical:
        sigma_exc = (0.0, -wm, wm)
    else:
        sigma_exc = (0.0, -omega_p, omega_p, -wm, wm)
    return DerivedConstants(
        c=c,
        omega_p=float(omega_p),
        omega_c=float(omega_c),
        kappa_c=float(kappa_c),
        sigma_exc=sigma_exc,
        critical=critical,
    )
