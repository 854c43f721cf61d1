"""Generalized eigenfunctions of the bilayer and slab guided-mode profiles.

A mode is described by its scalar electric component e(x); the remaining five
components (two magnetic, one electric current, two magnetic currents) follow
from e by local algebraic relations and one x-derivative ("vectorization").
The scalar profiles are piecewise combinations of cosh/sinh/exp built from the
signed transverse roots, glued so that e and mu^-1 e' are continuous across
material interfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .media import DrudeMedium, permeability, permittivity
from .zones import (
    SpectralPoint,
    ZoneLabel,
    bilayer_dispersion_value,
    branch_index_set,
    classify_zone,
    dispersion_squares,
    transverse_roots,
)

__all__ = [
    "GridResolutionError",
    "ScalarMode",
    "ScalarProfile",
    "ModeProfile",
    "surface_mode",
    "surface_mode_scalar",
    "normalization_constant",
    "slab_even",
    "slab_even_mode",
    "vectorize",
    "sturm_liouville_residual",
]

SURFACE_ZONES = (ZoneLabel.DD, ZoneLabel.DI, ZoneLabel.DE, ZoneLabel.EI)


class GridResolutionError(ValueError):
    """Raised when a profile grid undersamples the shortest oscillation."""


@dataclass(frozen=True)
class _Piece:
    """One material region of a piecewise mode: closed interval and callables."""

    lo: float
    hi: float
    mu: float
    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ScalarMode:
    """Piecewise-analytic scalar mode e(x) with one-sided closed forms.

    ``value``/``derivative`` include the ``amplitude`` factor.  At an interface
    the right-hand piece owns the point; one-sided data for both sides is
    available through :meth:`transmission_jumps`.
    """

    k: float
    omega: float
    branch: int
    amplitude: float
    interfaces: tuple[float, ...]
    pieces: tuple[_Piece, ...]

    def _piece_masks(self, x: np.ndarray):
        masks = []
        for n, piece in enumerate(self.pieces):
            m = (x >= piece.lo) & (x <= piece.hi)
            for later in self.pieces[n + 1:]:
                m &= ~(x >= later.lo)
            masks.append(m)
        return masks

    def value(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape, dtype=complex)
        for piece, mask in zip(self.pieces, self._piece_masks(x)):
            if mask.any():
                out[mask] = piece.value(x[mask])
        return self.amplitude * out

    def derivative(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape, dtype=complex)
        for piece, mask in zip(self.pieces, self._piece_masks(x)):
            if mask.any():
                out[mask] = piece.derivative(x[mask])
        return self.amplitude * out

    def transmission_jumps(self) -> list[tuple[complex, complex]]:
        """Per interface: jumps of e and of mu^-1 e', from the one-sided forms."""
        jumps = []
        for left, right in zip(self.pieces[:-1], self.pieces[1:]):
            x = np.array([left.hi])
            e_jump = (right.value(x) - left.value(x))[0]
            flux_jump = (right.derivative(x) / right.mu - left.derivative(x) / left.mu)[0]
            jumps.append((self.amplitude * e_jump, self.amplitude * flux_jump))
        return jumps


@dataclass(frozen=True)
class ScalarProfile:
    """Sampled scalar mode on a strictly increasing grid."""

    grid: np.ndarray
    values: np.ndarray
    interface_locations: tuple[float, ...]

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        if g.ndim != 1 or len(g) < 3 or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be a strictly increasing 1D array")
        if len(self.values) != len(g):
            raise ValueError("values and grid length mismatch")
        for xi in self.interface_locations:
            if not np.isclose(g, xi, rtol=0, atol=1e-12 * max(1.0, abs(xi))).any():
                raise ValueError(f"interface {xi} is not a grid point")


@dataclass(frozen=True)
class ModeProfile:
    """Six-component mode samples; current components live on the Drude subgrid."""

    grid: np.ndarray
    E: np.ndarray
    H_x: np.ndarray
    H_y: np.ndarray
    drude_mask: np.ndarray
    P_dot: np.ndarray
    M_dot_x: np.ndarray
    M_dot_y: np.ndarray
    interface_locations: tuple[float, ...]


def _surface_pieces(medium: DrudeMedium, point: SpectralPoint, j: int):
    """Piecewise (value, derivative) closures of the bilayer mode psi_{k,w,j}."""
    roots = transverse_roots(medium, point)
    xi_m, xi_p = roots.xi_minus, roots.xi_plus
    mu_m = medium.mu0
    mu_p = permeability(medium, point.omega)

    if j == 1:
        # incident + reflected in the vacuum, transmitted into the Drude side
        ratio = (xi_p / mu_p) / (xi_m / mu_m)
        left = _Piece(-np.inf, 0.0, mu_m,
                      lambda x: np.cosh(xi_m * x) - ratio * np.sinh(xi_m * x),
                      lambda x: xi_m * np.sinh(xi_m * x) - ratio * xi_m * np.cosh(xi_m * x))
        right = _Piece(0.0, np.inf, mu_p,
                       lambda x: np.exp(-xi_p * x),
                       lambda x: -xi_p * np.exp(-xi_p * x))
    elif j == -1:
        ratio = (xi_m / mu_m) / (xi_p / mu_p)
        left = _Piece(-np.inf, 0.0, mu_m,
                      lambda x: np.exp(xi_m * x),
                      lambda x: xi_m * np.exp(xi_m * x))
        right = _Piece(0.0, np.inf, mu_p,
                       lambda x: np.cosh(xi_p * x) + ratio * np.sinh(xi_p * x),
                       lambda x: xi_p * np.sinh(xi_p * x) + ratio * xi_p * np.cosh(xi_p * x))
    elif j == 0:
        # interface-guided: decaying on both sides
        left = _Piece(-np.inf, 0.0, mu_m,
                      lambda x: np.exp(xi_m * x),
                      lambda x: xi_m * np.exp(xi_m * x))
        right = _Piece(0.0, np.inf, mu_p,
                       lambda x: np.exp(-xi_p * x),
                       lambda x: -xi_p * np.exp(-xi_p * x))
    else:
        raise ValueError(f"branch index must be -1, 0 or +1, got {j}")
    return (left, right)


def normalization_constant(medium: DrudeMedium, point: SpectralPoint, j: int) -> float:
    """Weight A_{k,w,j} that makes the generalized mode family orthonormal.

    For the surface branches (j = +-1) it blows up where the interface
    mismatch vanishes, i.e. exactly on the plasmonic curve, which carries its
    own j = 0 constant.
    """
    zone = classify_zone(medium, point)
    if j not in branch_index_set(zone):
        raise ValueError(f"branch j={j} not available in zone {zone.value}")
    w = point.omega
    roots = transverse_roots(medium, point)
    if j in (1, -1):
        value = bilayer_dispersion_value(medium, point)
        if value == 0.0:
            raise ValueError("surface normalization undefined on the plasmonic curve")
        if j == 1:
            xi_over_mu = roots.xi_minus / medium.mu0
        else:
            xi_over_mu = roots.xi_plus / permeability(medium, w)
        return float(abs(0.5 * w * xi_over_mu) ** 0.5 / (np.pi * abs(value)))
    mu_p = permeability(medium, w)
    quartic = 4.0 * point.k ** 4 + (medium.eps0 * medium.mu0) ** 2 * (
        medium.omega_e ** 2 - medium.omega_m ** 2) ** 2
    return float(w * w * abs(mu_p * roots.xi_plus) ** 0.5
                 / (np.sqrt(2.0 * np.pi) * medium.omega_m * quartic ** 0.25))


def surface_mode(medium: DrudeMedium, point: SpectralPoint, j: int,
                 normalized: bool = True) -> ScalarMode:
    """Bilayer generalized mode as an analytic :class:`ScalarMode`.

    ``j`` must belong to the branch set of the zone at ``point``; with
    ``normalized`` the orthonormalization weight is folded into the values.
    """
    zone = classify_zone(medium, point)
    if j not in branch_index_set(zone):
        raise ValueError(f"branch j={j} not available in zone {zone.value}")
    amplitude = normalization_constant(medium, point, j) if normalized else 1.0
    return ScalarMode(k=point.k, omega=point.omega, branch=j, amplitude=amplitude,
                      interfaces=(0.0,), pieces=_surface_pieces(medium, point, j))


def surface_mode_scalar(medium: DrudeMedium, point: SpectralPoint, j: int,
                        grid) -> ScalarProfile:
    """Sampled bilayer mode, normalization included."""
    mode = surface_mode(medium, point, j)
    grid = np.asarray(grid, dtype=float)
    return ScalarProfile(grid=grid, values=mode.value(grid), interface_locations=(0.0,))


def slab_even(medium: DrudeMedium, point: SpectralPoint) -> ScalarMode:
    """Even slab trial mode: cosh inside the slab, matched decay outside.

    The construction is continuous at |x| = L by design and satisfies the
    Neumann condition e'(0) = 0; the remaining flux-continuity condition is
    the slab dispersion relation, so the returned mode solves the eigenproblem
    exactly when (k, omega) lies on a dispersion curve.
    """
    k, w = point.k, point.omega
    c = medium.light_speed
    if not (0.0 < w < c * k):
        raise ValueError("slab modes require 0 < omega < c*k (evanescent vacuum)")
    if abs(w - medium.omega_m) <= 1e-14 * medium.omega_m:
        raise ValueError("omega_m is a stationary frequency")
    L = medium.slab_half_width
    d_minus, d_plus = dispersion_squares(medium, point)
    xi_m = np.sqrt(d_minus)  # > 0 below the light line
    xi_p = 1j * np.sqrt(-d_plus) if d_plus < 0.0 else complex(np.sqrt(d_plus))
    mu_p = permeability(medium, w)
    edge = np.cosh(xi_p * L)

    pieces = (
        _Piece(-np.inf, -L, medium.mu0,
               lambda x: edge * np.exp(xi_m * (x + L)),
               lambda x: xi_m * edge * np.exp(xi_m * (x + L))),
        _Piece(-L, L, mu_p,
               lambda x: np.cosh(xi_p * x),
               lambda x: xi_p * np.sinh(xi_p * x)),
        _Piece(L, np.inf, medium.mu0,
               lambda x: edge * np.exp(-xi_m * (x - L)),
               lambda x: -xi_m * edge * np.exp(-xi_m * (x - L))),
    )
    return ScalarMode(k=k, omega=w, branch=0, amplitude=1.0,
                      interfaces=(-L, L), pieces=pieces)


def slab_even_mode(medium: DrudeMedium, point: SpectralPoint, grid) -> ScalarProfile:
    """Sampled even slab mode on ``grid`` (must contain +-L)."""
    mode = slab_even(medium, point)
    grid = np.asarray(grid, dtype=float)
    L = medium.slab_half_width
    return ScalarProfile(grid=grid, values=mode.value(grid),
                         interface_locations=(-L, L))


def _region_slices(grid: np.ndarray, interfaces: tuple[float, ...]):
    """Split ``grid`` into per-material slices sharing the interface nodes."""
    idx = [0]
    for xi in interfaces:
        hits = np.nonzero(np.isclose(grid, xi, rtol=0, atol=1e-12 * max(1.0, abs(xi))))[0]
        if len(hits) == 0:
            raise ValueError(f"interface {xi} is not on the grid")
        idx.append(int(hits[0]))
    idx.append(len(grid) - 1)
    return [slice(idx[n], idx[n + 1] + 1) for n in range(len(idx) - 1)]


def _region_is_drude(interfaces: tuple[float, ...], n_region: int) -> bool:
    if len(interfaces) == 1:  # bilayer: vacuum | drude
        return n_region == 1
    if len(interfaces) == 2:  # slab: vacuum | drude | vacuum
        return n_region == 1
    raise ValueError("expected one (bilayer) or two (slab) interfaces")


def vectorize(medium: DrudeMedium, point: SpectralPoint, scalar: ScalarProfile) -> ModeProfile:
    """Lift a scalar profile to the six-component mode.

    The magnetic field is -i/(mu*w) times the k-curl of E, the electric
    current is i*eps0*omega_e^2/w * E and the magnetic current is
    mu0*omega_m^2/(mu_plus*w^2) times the k-curl, both restricted to the Drude
    region.  Derivatives are centered second-order differences taken within
    each material region (one-sided at interfaces); shared interface nodes
    carry the right-hand region's values.
    """
    k, w = point.k, point.omega
    if abs(w) <= 1e-14 or abs(abs(w) - medium.omega_m) <= 1e-14 * medium.omega_m:
        raise ValueError("vectorization undefined at the stationary frequencies")
    mu_p = permeability(medium, w)
    if mu_p == 0.0:
        raise ValueError("mu_plus vanished")
    grid = np.asarray(scalar.grid, dtype=float)
    e = np.asarray(scalar.values, dtype=complex)
    slices = _region_slices(grid, scalar.interface_locations)

    E = e.copy()
    H_x = np.zeros_like(e)
    H_y = np.zeros_like(e)
    drude_mask = np.zeros(len(grid), dtype=bool)
    P_dot = M_dot_x = M_dot_y = np.zeros(0, dtype=complex)

    for n, sl in enumerate(slices):
        mu = mu_p if _region_is_drude(scalar.interface_locations, n) else medium.mu0
        de = np.gradient(e[sl], grid[sl], edge_order=2)
        H_x[sl] = (k / (mu * w)) * e[sl]
        H_y[sl] = (1j / (mu * w)) * de
        if _region_is_drude(scalar.interface_locations, n):
            drude_mask[sl] = True
            P_dot = (1j * medium.eps0 * medium.omega_e ** 2 / w) * e[sl]
            M_dot_x = (1j * k * medium.mu0 * medium.omega_m ** 2 / (mu_p * w * w)) * e[sl]
            M_dot_y = (-medium.mu0 * medium.omega_m ** 2 / (mu_p * w * w)) * de

    return ModeProfile(grid=grid, E=E, H_x=H_x, H_y=H_y, drude_mask=drude_mask,
                       P_dot=P_dot, M_dot_x=M_dot_x, M_dot_y=M_dot_y,
                       interface_locations=scalar.interface_locations)


def _second_difference(x: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Three-point second derivative at interior points (non-uniform safe)."""
    hl = x[1:-1] - x[:-2]
    hr = x[2:] - x[1:-1]
    return 2.0 * (f[:-2] / (hl * (hl + hr)) - f[1:-1] / (hl * hr) + f[2:] / (hr * (hl + hr)))


def _one_sided_derivative(x: np.ndarray, f: np.ndarray, at_start: bool) -> complex:
    """Second-order one-sided first derivative at a region endpoint."""
    if at_start:
        h1, h2 = x[1] - x[0], x[2] - x[0]
        return (-(h1 + h2) / (h1 * h2) * f[0]
                + h2 / (h1 * (h2 - h1)) * f[1]
                - h1 / (h2 * (h2 - h1)) * f[2])
    h1, h2 = x[-1] - x[-2], x[-1] - x[-3]
    return ((h1 + h2) / (h1 * h2) * f[-1]
            - h2 / (h1 * (h2 - h1)) * f[-2]
            + h1 / (h2 * (h2 - h1)) * f[-3])


def _extrapolate(x: np.ndarray, f: np.ndarray, x0: float) -> complex:
    """Quadratic extrapolation to x0 from three samples (Lagrange)."""
    total = 0.0 + 0.0j
    for i in range(3):
        li = 1.0
        for m in range(3):
            if m != i:
                li *= (x0 - x[m]) / (x[i] - x[m])
        total += li * f[i]
    return total


def sturm_liouville_residual(medium: DrudeMedium, point: SpectralPoint,
                             profile: ScalarProfile, geometry: str) -> tuple[float, list[float]]:
    """Interior equation residual and interface-jump residuals of a profile.

    The interior residual is max |mu^-1 (-e'' + D e)| over region-interior
    points, scaled by max|e| * max|D/mu|; jumps are |[e]| and |[mu^-1 e']| at
    each interface, from one-sided stencils that never cross a material
    boundary.  Raises :class:`GridResolutionError` below 8 points per
    wavelength on any oscillatory region.
    """
    if geometry not in ("bilayer", "slab"):
        raise ValueError(f"geometry must be 'bilayer' or 'slab', got {geometry!r}")
    expected = (0.0,) if geometry == "bilayer" else (-medium.slab_half_width, medium.slab_half_width)
    if tuple(profile.interface_locations) != expected:
        raise ValueError("profile interfaces do not match the geometry")

    k, w = point.k, point.omega
    d_minus, d_plus = dispersion_squares(medium, point)
    mu_p = permeability(medium, w)
    grid = np.asarray(profile.grid, dtype=float)
    e = np.asarray(profile.values, dtype=complex)
    slices = _region_slices(grid, profile.interface_locations)

    interior = 0.0
    scale_coef = 0.0
    for n, sl in enumerate(slices):
        drude = _region_is_drude(profile.interface_locations, n)
        d_val = d_plus if drude else d_minus
        mu = mu_p if drude else medium.mu0
        x_r, e_r = grid[sl], e[sl]
        if d_val < 0.0:
            wavelength = 2.0 * np.pi / np.sqrt(-d_val)
            if np.max(np.diff(x_r)) > wavelength / 8.0:
                raise GridResolutionError(
                    f"region {n}: grid spacing exceeds 1/8 of the local wavelength {wavelength:.3g}")
        if len(x_r) >= 3:
            r = np.abs((-_second_difference(x_r, e_r) + d_val * e_r[1:-1]) / mu)
            interior = max(interior, float(np.max(r)))
        scale_coef = max(scale_coef, abs(d_val / mu))
    scale = float(np.max(np.abs(e))) * scale_coef
    interior_residual = interior / scale if scale > 0 else interior

    jump_residuals: list[float] = []
    for n, xi in enumerate(profile.interface_locations):
        left, right = slices[n], slices[n + 1]
        mu_l = mu_p if _region_is_drude(profile.interface_locations, n) else medium.mu0
        mu_r = mu_p if _region_is_drude(profile.interface_locations, n + 1) else medium.mu0
        x_l, e_l = grid[left], e[left]
        x_r, e_r = grid[right], e[right]
        e_jump = _extrapolate(x_r[1:4], e_r[1:4], xi) - _extrapolate(x_l[-4:-1], e_l[-4:-1], xi)
        flux_jump = (_one_sided_derivative(x_r, e_r, at_start=True) / mu_r
                     - _one_sided_derivative(x_l, e_l, at_start=False) / mu_l)
        jump_residuals.extend([abs(e_jump), abs(flux_jump)])
    return interior_residual, jump_residuals
