import math

import pytest

import rydberg_eit as rx


def test_symbols():
    assert rx.wigner3j(1, 1, 0, 0, 0, 0) == pytest.approx(-1 / math.sqrt(3), abs=1e-15)
    assert rx.wigner3j(1, 1, 1, 0, 0, 1) == 0.0
    assert rx.wigner6j(1, 1, 1, 1, 1, 1) == pytest.approx(1 / 6, abs=1e-15)
    assert rx.wigner6j(1, 1, 3, 1, 1, 1) == 0.0
    assert rx.dipole_angular_factor(2.5, 4, 1, 1.5, 3, 1, 0, 3.5) != 0.0
    with pytest.raises(ValueError):
        rx.wigner3j(1, 1, 1, 2, -1, -1)


def test_manifolds():
    assert rx.hyperfine_manifolds(2.5, 3.5) == [1, 2, 3, 4, 5, 6]
    assert rx.hyperfine_manifolds(0.5, 0.5) == [0, 1]


def test_transition_counts():
    assert rx.transition_counts("full")["rf"] == (84, 50)
    assert rx.transition_counts("truncated")["rf"] == (54, 50)
    assert rx.transition_counts("truncated")["probe"][0] == 9
    with pytest.raises(ValueError):
        rx.transition_counts("full", {"rf.rabbi_mhz": "1"})


def test_dressed_eigenvalues():
    full = rx.dressed_eigenvalues("full")
    assert len(full["unique"]) == 5
    assert len(full["eigenvalues"]) == 80
    assert len(rx.dressed_eigenvalues("truncated")["unique"]) == 25
    ratio = full["unique"][-1] / full["unique"][-2]
    assert ratio == pytest.approx(math.sqrt(6) / 2, abs=1e-9)


def test_spectrum_peaks():
    co = rx.spectrum("full", {"scan.points": "301"})
    assert len(co["detuning_mhz"]) == 301
    assert len(co["peaks_mhz"]) == 4
    assert all(abs(p) > 10 for p in co["peaks_mhz"])
    perp = rx.spectrum("full", {"scan.points": "301", "rf.polarization": "1,0,0"}, jobs=2)
    assert any(abs(p) <= 2.0 for p in perp["peaks_mhz"])


def test_weak_probe_absorbs():
    chi = rx.weak_probe_susceptibility("full", {"rf.rabi_mhz": "0", "coupling.rabi_mhz": "0"})
    assert chi.imag > 0


def test_validate():
    results = rx.validate()
    assert results and all(passed for _, passed, _ in results)
