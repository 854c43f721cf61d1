import numpy as np
import pytest

from drudewaves import DrudeMedium, derived_constants, permeability, permittivity


def test_drude_permittivity_values():
    m = DrudeMedium(omega_e=1.0, omega_m=1.0)
    assert permittivity(m, 1.0) == pytest.approx(0.0, abs=1e-15)
    # relative permittivity hits -1 at omega_e / sqrt(2)
    assert permittivity(m, 1.0 / np.sqrt(2.0)) == pytest.approx(-m.eps0, rel=1e-14)
    assert permittivity(m, 2.0) == pytest.approx(0.75, rel=1e-15)
    assert permittivity(m, 5.0, side="vacuum") == m.eps0


def test_drude_permeability_values():
    m = DrudeMedium(omega_e=1.0, omega_m=1.0)
    assert permeability(m, 1.0) == pytest.approx(0.0, abs=1e-15)
    m2 = DrudeMedium(omega_e=1.0, omega_m=2.0)
    assert permeability(m2, np.sqrt(2.0)) == pytest.approx(-1.0, rel=1e-14)
    assert permeability(m2, 4.0) == pytest.approx(0.75, rel=1e-15)


def test_pole_at_zero_frequency():
    m = DrudeMedium(omega_e=1.0, omega_m=1.0)
    with pytest.raises(ValueError):
        permittivity(m, 0.0)
    with pytest.raises(ValueError):
        permeability(m, 0.0)
    # vacuum side is regular everywhere
    assert permittivity(m, 0.0, side="vacuum") == m.eps0


def test_invalid_medium_rejected():
    with pytest.raises(ValueError):
        DrudeMedium(omega_e=-1.0, omega_m=1.0)
    with pytest.raises(ValueError):
        DrudeMedium(omega_e=1.0, omega_m=1.0, eps0=0.0)


def test_evenness_in_frequency():
    m = DrudeMedium(omega_e=0.8, omega_m=1.7, eps0=2.0, mu0=0.5)
    rng = np.random.default_rng(7)
    w = rng.uniform(0.01, 10.0, size=1000)
    assert np.allclose(permittivity(m, w), permittivity(m, -w), rtol=0, atol=0)
    assert np.allclose(permeability(m, w), permeability(m, -w), rtol=0, atol=0)


def test_sign_chart():
    m = DrudeMedium(omega_e=1.3, omega_m=0.6)
    rng = np.random.default_rng(11)
    w = rng.uniform(1e-3, 4.0, size=2000)
    eps = permittivity(m, w)
    mu = permeability(m, w)
    assert np.array_equal(eps < 0, np.abs(w) < m.omega_e)
    assert np.array_equal(mu < 0, np.abs(w) < m.omega_m)


def test_derived_constants_generic():
    m = DrudeMedium(omega_e=1.0, omega_m=2.0)
    cons = derived_constants(m)
    assert cons.omega_p == pytest.approx(np.sqrt(2.0), rel=1e-15)
    assert cons.omega_c == pytest.approx(2.0 / np.sqrt(5.0), rel=1e-15)
    assert cons.kappa_c == pytest.approx(cons.omega_c, rel=1e-15)  # eps0 = mu0 = 1
    assert not cons.critical
    assert 0.0 in cons.sigma_exc
    assert m.omega_m in cons.sigma_exc and -m.omega_m in cons.sigma_exc
    assert cons.omega_p in cons.sigma_exc


def test_derived_constants_critical():
    m = DrudeMedium(omega_e=1.0, omega_m=1.0)
    cons = derived_constants(m)
    assert cons.critical
    assert cons.omega_p == pytest.approx(cons.omega_c, rel=1e-15)
    assert abs(cons.omega_p - cons.omega_c) <= 1e-12 * m.omega_m
    # the plasmonic frequency is absorbed into the point spectrum, not sigma_exc
    assert cons.sigma_exc == (0.0, -1.0, 1.0)


def test_critical_flag_forcing():
    m = DrudeMedium(omega_e=1.0, omega_m=1.0 + 1e-9)
    assert not derived_constants(m).critical
    assert derived_constants(m, force_critical=True).critical


def test_sigma_exc_always_contains_stationary_set():
    rng = np.random.default_rng(3)
    for _ in range(20):
        we, wm = rng.uniform(0.2, 3.0, size=2)
        cons = derived_constants(DrudeMedium(omega_e=we, omega_m=wm))
        assert 0.0 in cons.sigma_exc
        assert wm in cons.sigma_exc and -wm in cons.sigma_exc
