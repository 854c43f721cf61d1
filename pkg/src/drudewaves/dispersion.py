"""Guided-wave dispersion curves of the Drude slab (and the dielectric slab).

Even electric modes of a slab of half-width L satisfy

    xi_plus * tanh(xi_plus * L) = -(mu_plus(w)/mu0) * xi_minus

below the vacuum light line.  Branches with an oscillatory slab interior
(n >= 1) are isolated by the pole structure of tau*tan(tau*L): writing
xi_plus = i*tau, the n-th branch has tau*L pinned between (n-1/2)*pi and
n*pi, and tau is a monotone reparametrization of omega at fixed k.  The
evanescent-interior branch (n = 0) is bracketed between the interior cut and
min(c*k, omega_m).  Each solve is a safeguarded bracketing root find followed
by a residual check, which makes threshold tangency, critical points and
large-k asymptotics directly measurable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .media import DrudeMedium, derived_constants, permeability, permittivity
from .zones import SpectralPoint, dispersion_squares

__all__ = [
    "BelowThresholdError",
    "TraceError",
    "CriticalPoint",
    "DispersionBranch",
    "S0Classifier",
    "slab_even_residual",
    "threshold_kappa",
    "branch_solve",
    "group_velocity",
    "trace_branch",
    "asymptotics_check",
    "s0_evaluate",
    "locate_tau_c",
    "classify_omega0",
    "dielectric_threshold",
    "dielectric_branch_solve",
    "trace_dielectric_branch",
]

RESIDUAL_TOL = 1e-12
SAMPLE_RESIDUAL_TOL = 1e-10


class BelowThresholdError(ValueError):
    """Requested wavenumber lies at or below the branch threshold kappa_n."""


class TraceError(RuntimeError):
    """Branch continuation failed (bracket collapse or residual blow-up)."""


@dataclass(frozen=True)
class CriticalPoint:
    k_cr: float
    omega_cr: float
    kind: str  # "max", "min" or "inflection"
    second_derivative: float = 0.0
    second_derivative_error: float = 0.0


@dataclass(frozen=True)
class DispersionBranch:
    n: int
    kappa_n: float
    k: np.ndarray
    omega: np.ndarray
    group_velocity: np.ndarray
    critical_points: tuple[CriticalPoint, ...]
    zone: str  # "LambdaMinus" (propagative interior) or "LambdaPlus"


@dataclass(frozen=True)
class S0Classifier:
    rho: float
    Omega_bold: float
    tau_c: float
    s_min: float
    scenario: str  # RhoGe1Max | IncreasingOnly | InflectionCase | MinMaxPair
    critical_points: tuple[CriticalPoint, ...] = field(default=())


def slab_even_residual(medium: DrudeMedium, point: SpectralPoint) -> float:
    """Real residual of the even-mode dispersion relation at ``point``.

    In the propagative-interior region (xi_plus = i*tau) the identity
    i*tau*tanh(i*tau*L) = -tau*tan(tau*L) keeps the value real.  Near a tan
    pole (tau*L = pi/2 mod pi) the value is finite in floating point and its
    sign follows the one-sided limits.
    """
    k, w = point.k, point.omega
    c = medium.light_speed
    if not (k > 0.0 and 0.0 < w < c * k):
        raise ValueError("point must satisfy 0 < omega < c*k")
    if abs(w - medium.omega_m) <= 1e-15 * medium.omega_m:
        raise ValueError("omega_m is excluded")
    L = medium.slab_half_width
    d_minus, d_plus = dispersion_squares(medium, point)
    xi_minus = np.sqrt(d_minus)
    mu_ratio = permeability(medium, w) / medium.mu0
    if d_plus < 0.0:
        tau = np.sqrt(-d_plus)
        return float(-tau * np.tan(tau * L) + mu_ratio * xi_minus)
    xi_plus = np.sqrt(d_plus)
    return float(xi_plus * np.tanh(xi_plus * L) + mu_ratio * xi_minus)


def _residual_scale(medium: DrudeMedium, point: SpectralPoint) -> float:
    """Magnitude scale of the two residual terms, for relative tolerances."""
    d_minus, d_plus = dispersion_squares(medium, point)
    xi_minus = np.sqrt(max(d_minus, 0.0))
    mu_ratio = abs(permeability(medium, point.omega)) / medium.mu0
    first = np.sqrt(abs(d_plus))
    return float(max(1.0, first, mu_ratio * xi_minus))


def residual_certificate(medium: DrudeMedium, point: SpectralPoint,
                         tol: float = RESIDUAL_TOL) -> tuple[float, float]:
    """Residual at ``point`` and the certification tolerance there.

    The tolerance is tol * scale, widened by the residual variation over a
    few ULPs of omega: close to the light line xi_minus has a square-root
    singularity, so no floating-point omega can do better than that local
    variation.
    """
    residual = slab_even_residual(medium, point)
    allowance = tol * _residual_scale(medium, point)
    h = 8.0 * np.spacing(point.omega)
    for w_near in (point.omega - h, point.omega + h):
        try:
            near = slab_even_residual(medium, SpectralPoint(point.k, w_near))
        except ValueError:
            continue
        allowance = max(allowance, 2.0 * abs(near - residual))
    return float(residual), float(allowance)


def threshold_kappa(medium: DrudeMedium, n: int) -> float:
    """Threshold wavenumber kappa_n where branch n is born on the light line."""
    if n < 0:
        raise ValueError("branch index must be >= 0")
    L, c = medium.slab_half_width, medium.light_speed
    we, wm = medium.omega_e, medium.omega_m
    return float(L * wm * we / c**2
                 / np.sqrt((np.pi * n) ** 2 + (L / c) ** 2 * (wm**2 + we**2)))


def _omega_from_tau(medium: DrudeMedium, k: float, tau: float) -> float:
    """Invert tau^2 = eps*mu*w^2 - k^2 for the root below min(omega_e, omega_m)."""
    a, b = medium.omega_e**2, medium.omega_m**2
    em = medium.eps0 * medium.mu0
    big_b = a + b + (k * k + tau * tau) / em
    s = 2.0 * a * b / (big_b + np.sqrt(big_b * big_b - 4.0 * a * b))
    return float(np.sqrt(s))


def _tau_light(medium: DrudeMedium, k: float) -> float:
    """tau at the light-line frequency omega = c*k (0 once the line exits)."""
    c = medium.light_speed
    w2 = (c * k) ** 2
    a, b = medium.omega_e**2, medium.omega_m**2
    val = medium.eps0 * medium.mu0 * (w2 - a) * (w2 - b) / w2 - k * k
    return float(np.sqrt(val)) if val > 0.0 else 0.0


def _interior_cut_frequency(medium: DrudeMedium, k: float) -> float:
    """Frequency where the slab interior turns evanescent at this k (tau = 0)."""
    return _omega_from_tau(medium, k, 0.0)


def branch_solve(medium: DrudeMedium, k: float, n: int) -> float:
    """Frequency omega_n(k) of the n-th even slab branch; residual <= 1e-12.

    Branch n >= 1 is the unique root with tau*L in ((n-1/2)*pi, n*pi) above
    the light-line cutoff; branch 0 is the unique root between the interior
    cut and min(c*k, omega_m).  At the threshold itself the curve touches the
    light line, so omega = c*k is returned when the bracket degenerates.
    """
    if n < 0:
        raise ValueError("branch index must be >= 0")
    kappa_n = threshold_kappa(medium, n)
    if k <= kappa_n:
        raise BelowThresholdError(f"k = {k} <= kappa_{n} = {kappa_n}")
    c = medium.light_speed
    if k - kappa_n <= 1e-10 * kappa_n:
        # tangency: omega_n(k) = c*k + O((k - kappa_n)^2), so the extension is
        # exact far beyond the bracket resolution this close to threshold
        return c * k

    if n >= 1:
        L = medium.slab_half_width
        pad = 1e-12
        tau_lo = max((n - 0.5) * np.pi / L * (1.0 + pad), _tau_light(medium, k) * (1.0 + pad))
        tau_hi = n * np.pi / L * (1.0 - pad)
        if tau_lo >= tau_hi:
            raise BelowThresholdError(f"empty tau bracket at k = {k} for branch {n}")

        def g(tau: float) -> float:
            w = _omega_from_tau(medium, k, tau)
            xi_minus_sq = k * k - medium.eps0 * medium.mu0 * w * w
            xi_minus = np.sqrt(max(xi_minus_sq, 0.0))
            return float(-tau * np.tan(tau * L)
                         + (permeability(medium, w) / medium.mu0) * xi_minus)

        g_lo, g_hi = g(tau_lo), g(tau_hi)
        if g_lo == 0.0:
            tau_root = tau_lo
        elif g_hi == 0.0:
            tau_root = tau_hi
        elif g_lo * g_hi > 0.0:
            # quadratic tangency pushes the root within O(delta^2) of the
            # light line; once that is below ULP resolution the bracket loses
            # the sign change and c*k is the root to working precision
            if (k - kappa_n) / kappa_n <= 1e-5:
                return c * k
            raise TraceError(
                f"no sign change in tau bracket [{tau_lo}, {tau_hi}] at k = {k}, n = {n}: "
                f"g = ({g_lo:.3e}, {g_hi:.3e})")
        else:
            tau_root = brentq(g, tau_lo, tau_hi, xtol=1e-300, rtol=8.9e-16, maxiter=200)
        w = _omega_from_tau(medium, k, tau_root)
    else:
        w_lo = _interior_cut_frequency(medium, k)
        w_hi = min(c * k, medium.omega_m)
        if w_lo >= w_hi:
            raise BelowThresholdError(f"interior cut above the light line at k = {k}")
        # keep the endpoints strictly inside even when the bracket is ULP-thin
        pad = max(1e-12 * (w_hi - w_lo), 8.0 * np.spacing(w_hi))
        if w_lo + pad >= w_hi - pad:
            return c * k
        f = lambda w: slab_even_residual(medium, SpectralPoint(k, w))
        f_lo, f_hi = f(w_lo + pad), f(w_hi - pad)
        if f_lo * f_hi > 0.0:
            if (k - kappa_n) / kappa_n <= 1e-5:
                return c * k  # root indistinguishable from the light line
            raise TraceError(
                f"no sign change in omega bracket at k = {k}, n = 0: "
                f"f = ({f_lo:.3e}, {f_hi:.3e})")
        w = brentq(f, w_lo + pad, w_hi - pad, xtol=1e-300, rtol=8.9e-16, maxiter=200)

    if w >= c * k:  # light-line extension: residual undefined there
        return float(min(w, c * k))
    point = SpectralPoint(k, w)
    residual, allowance = residual_certificate(medium, point)
    if abs(residual) > allowance:
        raise TraceError(f"residual {residual:.3e} above tolerance at k = {k}, n = {n}")
    return float(w)


def group_velocity(medium: DrudeMedium, n: int, k: float, solver=None,
                   kappa_n: float | None = None) -> float:
    """d omega_n / dk by centered differences with step-halving agreement.

    The step starts at 1e-3 of the distance to threshold and halves until two
    consecutive estimates agree to 1e-6 relative (with a small absolute floor
    tied to the light speed).
    """
    solve = solver or (lambda kk: branch_solve(medium, kk, n))
    if kappa_n is None:
        kappa_n = threshold_kappa(medium, n) if solver is None else 0.0
    c = medium.light_speed
    step = min(1e-3 * k, 0.4 * (k - kappa_n)) if k > kappa_n > 0.0 else 1e-3 * k
    prev = None
    for _ in range(14):
        v = (solve(k + step) - solve(k - step)) / (2.0 * step)
        if prev is not None and abs(v - prev) <= max(1e-6 * abs(v), 1e-9 * c):
            return float(v)
        prev = v
        step *= 0.5
    return float(prev)


def _second_derivative(medium: DrudeMedium, n: int, k: float, rel_step: float = 1e-3):
    """omega_n'' with a step-halving error estimate."""
    def d2(s):
        return (branch_solve(medium, k + s, n) - 2.0 * branch_solve(medium, k, n)
                + branch_solve(medium, k - s, n)) / (s * s)
    s = rel_step * k
    a, b = d2(s), d2(0.5 * s)
    return float(b), float(abs(b - a) / 3.0)


def trace_branch(medium: DrudeMedium, n: int, k_max: float,
                 samples_per_decade: int = 48) -> DispersionBranch:
    """Trace branch n from its threshold to ``k_max`` with critical points.

    Sampling is logarithmic in the offset from threshold.  Critical points are
    located by bisection on the group velocity to 1e-10 * kappa_n and their
    kind certified through a second difference exceeding ten times its own
    step-halving error estimate; an interior minimum of |omega'| below
    1e-6 * c with no sign change is recorded as an inflection.
    """
    kappa_n = threshold_kappa(medium, n)
    if k_max <= kappa_n:
        raise BelowThresholdError(f"k_max = {k_max} below threshold {kappa_n}")
    span = k_max / kappa_n - 1.0
    n_pts = max(24, int(samples_per_decade * np.log10(span / 1e-6)))
    ks = kappa_n * (1.0 + np.geomspace(1e-6, span, n_pts))
    omegas = np.array([branch_solve(medium, k, n) for k in ks])
    vels = np.array([group_velocity(medium, n, k) for k in ks])

    # residual certification of every sample
    for k, w in zip(ks, omegas):
        if w >= medium.light_speed * k:
            continue  # threshold extension point
        residual, allowance = residual_certificate(medium, SpectralPoint(k, w),
                                                   tol=SAMPLE_RESIDUAL_TOL)
        if abs(residual) > allowance:
            raise TraceError(f"sample residual above tolerance at k = {k}")

    critical: list[CriticalPoint] = []
    vel = lambda k: group_velocity(medium, n, k)
    for i in range(len(ks) - 1):
        if vels[i] == 0.0 or vels[i] * vels[i + 1] >= 0.0:
            continue
        k_cr = brentq(vel, ks[i], ks[i + 1], xtol=1e-10 * kappa_n, rtol=8.9e-16, maxiter=200)
        d2, d2_err = _second_derivative(medium, n, k_cr)
        kind = "max" if d2 < 0.0 else "min"
        critical.append(CriticalPoint(k_cr=float(k_cr), omega_cr=branch_solve(medium, k_cr, n),
                                      kind=kind, second_derivative=d2,
                                      second_derivative_error=d2_err))

    if not critical:
        # monotone branch: a near-zero interior dip of |omega'| is an inflection
        i_min = int(np.argmin(np.abs(vels[2:-2]))) + 2
        if abs(vels[i_min]) <= 1e-6 * medium.light_speed:
            res = minimize_scalar(lambda k: abs(vel(k)),
                                  bracket=(ks[i_min - 1], ks[i_min], ks[i_min + 1]),
                                  method="brent", options={"xtol": 1e-12})
            k_i = float(res.x)
            critical.append(CriticalPoint(k_cr=k_i, omega_cr=branch_solve(medium, k_i, n),
                                          kind="inflection"))

    zone = "LambdaPlus" if n == 0 else "LambdaMinus"
    return DispersionBranch(n=n, kappa_n=kappa_n, k=ks, omega=omegas,
                            group_velocity=vels, critical_points=tuple(critical), zone=zone)


def asymptotics_check(medium: DrudeMedium, n: int, k_max: float | None = None) -> dict:
    """Fit the large-k behavior of branch n.

    n >= 1: omega_n ~ omega_e*omega_m/(c*k) - a_n/k^3, returning the limит
    ratio at k_max and the stabilized a_n over the top decade.  n = 0:
    compares (omega_0 - omega_p)*k^2 against its closed-form limit
    omega_m^3 (rho^2 - 1) / (8 c^2 sqrt(2)).
    """
    kappa_n = threshold_kappa(medium, n)
    if k_max is None:
        k_max = 50.0 * kappa_n
    if k_max < 20.0 * kappa_n:
        raise ValueError("k_max too small to probe the asymptotic regime")
    c = medium.light_speed
    we, wm = medium.omega_e, medium.omega_m
    ks = np.geomspace(k_max / 10.0, k_max, 12)
    omegas = np.array([branch_solve(medium, k, n) for k in ks])
    if n >= 1:
        product_limit = we * wm / c
        ratio = ks[-1] * omegas[-1] / product_limit
        a_samples = ks**3 * (product_limit / ks - omegas)
        return {"n": n, "limit_ratio": float(ratio),
                "a_n": float(np.median(a_samples)),
                "a_n_spread": float(np.ptp(a_samples))}
    omega_p = derived_constants(medium).omega_p
    rho = we / wm
    a_inf = wm**3 * (rho**2 - 1.0) / (8.0 * c**2 * np.sqrt(2.0))
    a_est = (omegas[-1] - omega_p) * ks[-1] ** 2
    return {"n": 0, "a_inf_closed_form": float(a_inf), "a_inf_fitted": float(a_est)}


def s0_evaluate(medium: DrudeMedium, tau: float, grouping: str = "one_minus"):
    """Shape functions alpha0, beta0 and the scenario discriminant S0 at tau.

    The discriminant combines beta0 * rho^2 * alpha0^(-1/2) / Omega_bold^2
    with 1; ``grouping`` selects the sign convention.  The default
    ``"one_minus"`` (1 - combination) is the only grouping with a unique
    interior minimum whose sign can change, which is what the omega_0 scenario
    split keys on; ``"one_plus"`` is kept as a diagnostic alternative.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    th = np.tanh(tau)
    sech2 = 1.0 - th * th
    denom = th + tau * sech2
    alpha0 = 1.0 / (th * denom)
    beta0 = tau**3 * sech2 / denom
    cons_rho = medium.omega_e / medium.omega_m
    omega_bold = medium.omega_m * medium.slab_half_width / medium.light_speed
    combo = (beta0 / omega_bold**2) * cons_rho**2 / np.sqrt(alpha0)
    if grouping == "one_minus":
        s0 = 1.0 - combo
    elif grouping == "one_plus":
        s0 = 1.0 + combo
    else:
        raise ValueError(f"unknown grouping {grouping!r}")
    return float(alpha0), float(beta0), float(s0)


def locate_tau_c(medium: DrudeMedium, grouping: str = "one_minus") -> tuple[float, float]:
    """Extremum location tau_c of S0 on (0, 50) and the value S0(tau_c).

    Both groupings share the same tau_c (extremum of beta0 / sqrt(alpha0));
    golden-section refinement after a coarse scan.
    """
    taus = np.linspace(1e-3, 50.0, 2000)
    q = np.array([s0_evaluate(medium, t, "one_minus")[2] for t in taus])
    i = int(np.argmin(q))
    lo = taus[max(i - 1, 0)]
    hi = taus[min(i + 1, len(taus) - 1)]
    res = minimize_scalar(lambda t: s0_evaluate(medium, t, "one_minus")[2],
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    tau_c = float(res.x)
    return tau_c, float(s0_evaluate(medium, tau_c, grouping)[2])


def classify_omega0(medium: DrudeMedium, k_max: float | None = None) -> S0Classifier:
    """Scenario of the evanescent-interior branch from its curve geometry.

    The critical-point inventory of the traced branch decides the scenario;
    the S0 discriminant is attached as a diagnostic only.  ``k_max`` extends
    automatically until the trailing tail is monotone, so a late minimum is
    not missed.
    """
    kappa_0 = threshold_kappa(medium, 0)
    if k_max is None:
        k_max = 40.0 * kappa_0
    branch = trace_branch(medium, 0, k_max)
    # extend if the last critical point sits suspiciously close to the end
    for _ in range(3):
        if branch.critical_points and branch.critical_points[-1].k_cr > 0.5 * k_max:
            k_max *= 4.0
            branch = trace_branch(medium, 0, k_max)
        else:
            break

    rho = medium.omega_e / medium.omega_m
    omega_bold = medium.omega_m * medium.slab_half_width / medium.light_speed
    tau_c, s_min = locate_tau_c(medium)

    kinds = [cp.kind for cp in branch.critical_points]
    if kinds == ["max"]:
        scenario = "RhoGe1Max"
    elif kinds == ["max", "min"]:
        scenario = "MinMaxPair"
    elif kinds == ["inflection"]:
        scenario = "InflectionCase"
    elif not kinds:
        scenario = "IncreasingOnly"
    else:
        raise TraceError(f"unrecognized critical-point inventory {kinds}")
    return S0Classifier(rho=float(rho), Omega_bold=float(omega_bold), tau_c=tau_c,
                        s_min=s_min, scenario=scenario,
                        critical_points=branch.critical_points)


# -- dielectric slab (non-dispersive) ---------------------------------------

def dielectric_threshold(eps1: float, mu1: float, medium: DrudeMedium, n: int) -> float:
    """Threshold kappa_n of the dielectric slab; kappa_0 = 0."""
    c = medium.light_speed
    c1 = 1.0 / np.sqrt(eps1 * mu1)
    if c1 >= c:
        raise ValueError("no guiding: interior light speed must be below the vacuum one")
    L = medium.slab_half_width
    return float(n * c1 * np.pi / (L * np.sqrt(c * c - c1 * c1)))


def dielectric_branch_solve(eps1: float, mu1: float, medium: DrudeMedium,
                            k: float, n: int) -> float:
    """Even-mode frequency of the dielectric slab, branch n, at wavenumber k."""
    c = medium.light_speed
    c1 = 1.0 / np.sqrt(eps1 * mu1)
    if c1 >= c:
        raise ValueError("no guiding: interior light speed must be below the vacuum one")
    kappa_n = dielectric_threshold(eps1, mu1, medium, n)
    if n > 0 and k <= kappa_n:
        raise BelowThresholdError(f"k = {k} <= kappa_{n} = {kappa_n}")
    if k <= 0.0:
        raise BelowThresholdError("k must be positive")
    L = medium.slab_half_width
    mu_ratio = mu1 / medium.mu0
    tau_max = k * np.sqrt(c * c - c1 * c1) / c1

    def g(tau: float) -> float:
        w = c1 * np.hypot(k, tau)
        xi_minus = np.sqrt(max(k * k - (w / c) ** 2, 0.0))
        return float(tau * np.tan(tau * L) - mu_ratio * xi_minus)

    pad = 1e-12
    tau_lo = (n * np.pi / L) * (1.0 + pad) if n > 0 else pad * tau_max
    tau_hi = min((n + 0.5) * np.pi / L, tau_max) * (1.0 - pad)
    if tau_lo >= tau_hi:
        raise BelowThresholdError(f"empty bracket for dielectric branch {n} at k = {k}")
    tau = brentq(g, tau_lo, tau_hi, xtol=1e-300, rtol=8.9e-16, maxiter=200)
    return float(c1 * np.hypot(k, tau))


def trace_dielectric_branch(eps1: float, mu1: float, medium: DrudeMedium,
                            n: int, k_max: float) -> DispersionBranch:
    """Trace a dielectric-slab branch; these are strictly increasing curves."""
    kappa_n = dielectric_threshold(eps1, mu1, medium, n)
    k_lo = kappa_n if n > 0 else 1e-3 * k_max
    if k_max <= k_lo:
        raise BelowThresholdError("k_max below threshold")
    span = k_max / max(k_lo, 1e-300) - 1.0
    ks = k_lo * (1.0 + np.geomspace(1e-6, span, 96)) if n > 0 else np.geomspace(k_lo, k_max, 96)
    solver = lambda kk: dielectric_branch_solve(eps1, mu1, medium, kk, n)
    omegas = np.array([solver(k) for k in ks])
    vels = np.array([group_velocity(medium, n, k, solver=solver, kappa_n=kappa_n) for k in ks])
    return DispersionBranch(n=n, kappa_n=kappa_n, k=ks, omega=omegas,
                            group_velocity=vels, critical_points=(), zone="LambdaMinus")
