import numpy as np
import pytest

from drudewaves import (
    DrudeMedium,
    SpectralPoint,
    ZoneLabel,
    bilayer_dispersion_value,
    classify_zone,
    derived_constants,
    dispersion_squares,
    plasmonic_curve,
    plasmonic_inverse_and_jacobian,
    transverse_roots,
)

CRIT = DrudeMedium(omega_e=1.0, omega_m=1.0)
ASYM = DrudeMedium(omega_e=1.0, omega_m=2.0)


def test_dispersion_squares_values():
    d_minus, d_plus = dispersion_squares(CRIT, SpectralPoint(0.3, 2.0))
    assert d_minus == pytest.approx(-3.91, rel=1e-14)
    assert d_plus == pytest.approx(-2.16, rel=1e-14)

    # on the light cone the vacuum square vanishes
    d_minus, _ = dispersion_squares(CRIT, SpectralPoint(0.7, 0.7))
    assert d_minus == pytest.approx(0.0, abs=1e-15)

    d_minus, d_plus = dispersion_squares(CRIT, SpectralPoint(1.0, 0.5))
    assert d_minus == pytest.approx(0.75, rel=1e-14)
    assert d_plus == pytest.approx(-1.25, rel=1e-14)

    with pytest.raises(ValueError):
        dispersion_squares(CRIT, SpectralPoint(1.0, 0.0))


def test_classify_zone_examples():
    # k_D(2) = 1.5 so k = 0.3 is inside the direct-direct region
    assert classify_zone(CRIT, SpectralPoint(0.3, 2.0)) is ZoneLabel.DD
    # k0 = 0.5 < 1 < k_I = 1.5
    assert classify_zone(CRIT, SpectralPoint(1.0, 0.5)) is ZoneLabel.EI
    # flat plasmonic curve at omega_m / sqrt(2) in the degenerate medium
    assert classify_zone(CRIT, SpectralPoint(2.0, 1.0 / np.sqrt(2.0))) is ZoneLabel.EE
    # inverse-inverse pocket below both plasma frequencies
    assert classify_zone(CRIT, SpectralPoint(0.3, 0.8)) is ZoneLabel.DI
    # direct vacuum, evanescent Drude above omega_m
    assert classify_zone(CRIT, SpectralPoint(0.8, 1.2)) is ZoneLabel.DE
    # stationary lines
    assert classify_zone(CRIT, SpectralPoint(0.4, 0.0)) is ZoneLabel.STATIONARY
    assert classify_zone(CRIT, SpectralPoint(0.4, 1.0)) is ZoneLabel.STATIONARY
    # spectral cut (light cone) and deep evanescent corner
    assert classify_zone(CRIT, SpectralPoint(0.5, 0.5)) is ZoneLabel.BOUNDARY
    assert classify_zone(CRIT, SpectralPoint(3.0, 0.9)) is ZoneLabel.EVANESCENT_BOTH


def test_quadrant_symmetry():
    rng = np.random.default_rng(5)
    for _ in range(400):
        k = rng.uniform(-3, 3)
        w = rng.uniform(-3, 3)
        if abs(w) < 1e-3:
            continue
        p = SpectralPoint(k, w)
        q = SpectralPoint(abs(k), abs(w))
        assert classify_zone(ASYM, p) is classify_zone(ASYM, q)


def test_transverse_roots_examples():
    r = transverse_roots(CRIT, SpectralPoint(0.3, 2.0))
    assert r.xi_minus == pytest.approx(-1j * np.sqrt(3.91), rel=1e-14)
    assert r.xi_plus == pytest.approx(-1j * np.sqrt(2.16), rel=1e-14)

    r = transverse_roots(CRIT, SpectralPoint(1.0, 0.5))
    assert r.xi_minus == pytest.approx(np.sqrt(0.75), rel=1e-14)
    assert r.xi_plus == pytest.approx(1j * np.sqrt(1.25), rel=1e-14)

    # flipping the frequency sign conjugates imaginary roots, keeps real ones
    r_neg = transverse_roots(CRIT, SpectralPoint(1.0, -0.5))
    assert r_neg.xi_minus == r.xi_minus
    assert r_neg.xi_plus == np.conj(r.xi_plus)

    with pytest.raises(ValueError):
        transverse_roots(CRIT, SpectralPoint(1.0, CRIT.omega_m))


def test_root_consistency_random():
    rng = np.random.default_rng(17)
    count = 0
    while count < 10_000:
        k = rng.uniform(-4, 4)
        w = rng.uniform(-4, 4)
        if abs(w) < 1e-3 or abs(abs(w) - ASYM.omega_m) < 1e-3:
            continue
        r = transverse_roots(ASYM, SpectralPoint(k, w))
        for xi, d in ((r.xi_minus, r.d_minus), (r.xi_plus, r.d_plus)):
            assert xi * xi == pytest.approx(d, rel=1e-12, abs=1e-12)
            # each root is either purely imaginary or non-negative real
            assert xi.real == 0.0 or (xi.imag == 0.0 and xi.real >= 0.0)
        count += 1


def test_zone_root_coherence():
    rng = np.random.default_rng(23)
    for _ in range(2000):
        k = rng.uniform(0, 4)
        w = rng.uniform(0.01, 4)
        p = SpectralPoint(k, w)
        zone = classify_zone(ASYM, p)
        if zone not in (ZoneLabel.DD, ZoneLabel.DI, ZoneLabel.EI, ZoneLabel.DE):
            continue
        r = transverse_roots(ASYM, p)
        vacuum_propagative = zone in (ZoneLabel.DD, ZoneLabel.DI, ZoneLabel.DE)
        drude_propagative = zone in (ZoneLabel.DD, ZoneLabel.DI, ZoneLabel.EI)
        assert (r.xi_minus.imag != 0.0) == vacuum_propagative
        assert (r.xi_plus.imag != 0.0) == drude_propagative


def test_cross_point_identity():
    rng = np.random.default_rng(29)
    for _ in range(20):
        we, wm = rng.uniform(0.3, 3.0, size=2)
        eps0, mu0 = rng.uniform(0.5, 2.0, size=2)
        m = DrudeMedium(omega_e=we, omega_m=wm, eps0=eps0, mu0=mu0)
        cons = derived_constants(m)
        d_minus, d_plus = dispersion_squares(m, SpectralPoint(cons.kappa_c, cons.omega_c))
        scale = max(cons.kappa_c**2, 1.0)
        assert abs(d_minus) <= 1e-12 * scale
        assert abs(d_plus) <= 1e-12 * scale


def test_dispersion_value_vanishes_on_plasmonic_curve():
    cons = derived_constants(ASYM)
    for k in np.geomspace(1.1 * cons.kappa_c, 100 * cons.kappa_c, 20):
        w = plasmonic_curve(ASYM, k)
        val = bilayer_dispersion_value(ASYM, SpectralPoint(k, w))
        assert abs(val) <= 1e-10


def test_dispersion_value_nonzero_below_cross_point():
    cons = derived_constants(ASYM)
    k = 0.5 * cons.kappa_c
    lo, hi = sorted((cons.omega_p, cons.omega_c))
    for w in np.linspace(lo * 1.01, hi * 0.99, 40):
        d_minus, d_plus = dispersion_squares(ASYM, SpectralPoint(k, w))
        if d_minus <= 0 or d_plus <= 0:
            continue
        val = bilayer_dispersion_value(ASYM, SpectralPoint(k, w))
        assert abs(val) > 1e-3


def test_dispersion_value_conjugation_symmetry():
    rng = np.random.default_rng(31)
    count = 0
    while count < 200:
        k = rng.uniform(0.1, 4)
        w = rng.uniform(0.05, 4)
        if abs(w - ASYM.omega_m) < 1e-2:
            continue
        a = bilayer_dispersion_value(ASYM, SpectralPoint(k, w))
        b = bilayer_dispersion_value(ASYM, SpectralPoint(k, -w))
        assert b == pytest.approx(np.conj(a), rel=1e-12)
        count += 1


def test_plasmonic_curve_values():
    cons = derived_constants(ASYM)
    assert plasmonic_curve(ASYM, cons.kappa_c) == pytest.approx(cons.omega_c, rel=1e-12)
    # degenerate case: flat curve
    for k in (0.8, 1.5, 40.0):
        assert plasmonic_curve(CRIT, k) == pytest.approx(1.0 / np.sqrt(2.0), rel=1e-15)
    # k -> inf approaches omega_p at rate k^-2
    gap10 = abs(plasmonic_curve(ASYM, 10.0) - cons.omega_p)
    gap20 = abs(plasmonic_curve(ASYM, 20.0) - cons.omega_p)
    assert gap10 / gap20 == pytest.approx(4.0, rel=0.05)
    # monotone increasing for omega_m > omega_e, decreasing otherwise
    ks = np.linspace(cons.kappa_c, 10, 200)
    vals = plasmonic_curve(ASYM, ks)
    assert np.all(np.diff(vals) > 0)
    flipped = DrudeMedium(omega_e=2.0, omega_m=1.0)
    cons_f = derived_constants(flipped)
    ks = np.linspace(cons_f.kappa_c, 10, 200)
    assert np.all(np.diff(plasmonic_curve(flipped, ks)) < 0)
    with pytest.raises(ValueError):
        plasmonic_curve(ASYM, 0.5 * cons.kappa_c)


def test_plasmonic_inverse_round_trip():
    cons = derived_constants(ASYM)
    for k in np.geomspace(1.001 * cons.kappa_c, 1e3 * cons.kappa_c, 100):
        w = plasmonic_curve(ASYM, k)
        k_back, _ = plasmonic_inverse_and_jacobian(ASYM, w)
        assert k_back == pytest.approx(k, rel=1e-9)


def test_plasmonic_jacobian_behavior():
    cons = derived_constants(ASYM)
    lo, hi = sorted((cons.omega_p, cons.omega_c))
    # k_E strictly increasing in omega for omega_m > omega_e
    ws = np.linspace(lo + 1e-4, hi - 1e-4, 50)
    ks = [plasmonic_inverse_and_jacobian(ASYM, w)[0] for w in ws]
    assert np.all(np.diff(ks) > 0)
    # Jacobian grows without bound toward the asymptote omega_p
    _, j_mid = plasmonic_inverse_and_jacobian(ASYM, 0.5 * (lo + hi))
    _, j_edge = plasmonic_inverse_and_jacobian(ASYM, hi - 1e-9 * (hi - lo))
    assert j_edge > 1e3 * j_mid
    _, j_sentinel = plasmonic_inverse_and_jacobian(ASYM, hi - 1e-14)
    assert np.isinf(j_sentinel)
    # outside the band and in the degenerate case the inverse is undefined
    with pytest.raises(ValueError):
        plasmonic_inverse_and_jacobian(ASYM, 0.5 * lo)
    with pytest.raises(ValueError):
        plasmonic_inverse_and_jacobian(CRIT, 0.7)
