"""Single-particle energies, spectrum assembly, multiset matching."""

import numpy as np
import pytest

from parafermions.errors import ResourceLimitError
from parafermions.indpoly import IndependencePolynomial, evaluate
from parafermions.spectrum import (
    FULL_SPECTRUM_CAP,
    MatchReport,
    full_spectrum,
    match_spectra,
    omega_table,
    single_particle_energies,
)


def test_omega_table():
    om = omega_table(4)
    assert np.allclose(om, [1, 1j, -1, -1j])
    assert np.allclose(omega_table(2), [1, -1])


def test_single_vertex_energy():
    # Z = 1 + lam x with lam = b^d has the single energy eps = b
    b, d = 0.7, 3
    sp = single_particle_energies(IndependencePolynomial((1.0, b ** d)), d)
    assert sp.eps.shape == (1,)
    assert abs(sp.eps[0] - b) < 1e-12
    assert not sp.degenerate
    assert sp.residuals.max() < 1e-12


def test_energies_solve_polynomial():
    rng = np.random.default_rng(21)
    for d in (2, 3, 5):
        for _ in range(10):
            deg = int(rng.integers(1, 6))
            coeffs = (1.0,) + tuple(float(c) for c in rng.uniform(0.2, 2.0, deg))
            poly = IndependencePolynomial(coeffs)
            sp = single_particle_energies(poly, d)
            assert len(sp.eps) == deg
            for e in sp.eps:
                val = evaluate(poly, complex(-(e ** (-d))))
                assert abs(val) < 1e-9, (coeffs, d, e)
            # deterministic order: by magnitude, then angle
            mags = np.abs(sp.eps)
            assert np.all(np.diff(mags) > -1e-12)


def test_principal_branch_and_sorting_pinned():
    # independent reconstruction of the pinned convention
    poly = IndependencePolynomial((1.0, 3.0, 1.0))
    sp = single_particle_energies(poly, 3)
    ys = np.roots([1.0, 3.0, 1.0])
    eps = np.exp(np.log(-1.0 / ys) / 3)
    eps = eps[np.lexsort((np.angle(eps), np.abs(eps)))]
    assert np.allclose(sp.eps, eps, atol=1e-10)


def test_degenerate_flag():
    sp = single_particle_energies(IndependencePolynomial((1.0, 2.0, 1.0)), 3)
    assert sp.degenerate
    sp2 = single_particle_energies(IndependencePolynomial((1.0, 3.0, 1.0)), 3)
    assert not sp2.degenerate


# -- spectrum assembly ---------------------------------------------------------


def test_full_spectrum_enumeration():
    eps = [0.5, 2.0]
    got = full_spectrum(eps, d=3)
    assert got.alpha == 2 and not got.truncated
    om = omega_table(3)
    want = sorted(
        (om[i] * 0.5 + om[j] * 2.0 for i in range(3) for j in range(3)),
        key=lambda z: (z.real, z.imag),
    )
    got_sorted = sorted(got.values, key=lambda z: (z.real, z.imag))
    assert np.allclose(got_sorted, want)


def test_full_spectrum_zero_modes():
    got = full_spectrum([], d=3)
    assert got.values.shape == (1,) and got.values[0] == 0


def test_full_spectrum_cap_and_truncation():
    eps = np.ones(8)
    with pytest.raises(ResourceLimitError):
        full_spectrum(eps, d=3, cap=100)
    got = full_spectrum(eps, d=3, cap=100, truncate=True)
    assert got.truncated and len(got.values) == 100
    # lexicographic prefix: first value has all x_k = 0, second flips the
    # last digit
    om = omega_table(3)
    assert abs(got.values[0] - 8.0) < 1e-12
    assert abs(got.values[1] - (7.0 + om[1])) < 1e-12
    full = full_spectrum(eps, d=3)
    assert np.allclose(full.values[:100], got.values)
    assert len(full.values) == 3 ** 8
    assert FULL_SPECTRUM_CAP >= 3 ** 8


# -- matching ------------------------------------------------------------------


def test_match_exact_and_perturbed():
    rng = np.random.default_rng(5)
    pred = rng.uniform(-1, 1, 12) + 1j * rng.uniform(-1, 1, 12)
    rep = match_spectra(pred, pred.copy(), tol=1e-10)
    assert rep.ok and rep.multiplicity == 1 and rep.max_distance == 0.0
    noisy = pred + 1e-9 * rng.standard_normal(12)
    rep = match_spectra(pred, noisy, tol=1e-6)
    assert rep.ok and rep.max_distance < 1e-7
    rep = match_spectra(pred, pred + 1e-3, tol=1e-6)
    assert not rep.ok


def test_match_with_multiplicity():
    pred = np.array([0.0, 1.0, 2.0 + 0.5j])
    obs = np.repeat(pred, 4)
    rep = match_spectra(pred, obs, tol=1e-12)
    assert rep.ok and rep.multiplicity == 4


def test_match_size_mismatch():
    rep = match_spectra(np.array([1.0, 2.0]), np.array([1.0, 2.0, 2.0]))
    assert not rep.ok
    assert "size mismatch" in rep.failure_mode


def test_match_multiplicity_deviation():
    pred = np.array([0.0, 1.0])
    obs = np.array([0.0, 0.0, 0.0, 1.0])
    rep = match_spectra(pred, obs, tol=1e-9)
    assert not rep.ok
    assert rep.max_multiplicity_deviation == 1


def test_match_conjugate_pairs_with_noise():
    # equal real parts must not destabilize the pairing order
    pred = np.array([2.0 + 1.0j, 2.0 - 1.0j, 0.5 + 0.0j])
    rng = np.random.default_rng(8)
    obs = pred + 1e-9 * (rng.standard_normal(3) + 1j * rng.standard_normal(3))
    rep = match_spectra(pred, obs[np.argsort(np.abs(obs))], tol=1e-6)
    assert rep.ok, rep


def test_match_report_is_dataclass_with_details():
    rep = match_spectra(np.array([1.0]), np.array([1.0]))
    assert isinstance(rep, MatchReport)
    assert rep.details["cluster_count"] == 1
