"""Dense verification layer: charges, transfer operators, modes, projectors."""

import numpy as np
import pytest

from parafermions.errors import (
    DegenerateSpectrumError,
    ResourceLimitError,
)
from parafermions.hamiltonian import HamTerm, Hamiltonian
from parafermions.oracle import (
    DenseOracle,
    build_modes,
    charge_matrix,
    check_root_of_unity_identities,
    eigenvalues,
    find_simplicial_mode,
    hamiltonian_matrix,
    transfer_matrix,
    _solve_mod_d,
)
from parafermions.weyl import QuditDims, dense_label, make_label


def baxter1(a=1.0, b=1.0):
    """Two-site chain: X_1, Z_1^2 Z_2, X_2 (a dipath on three terms)."""
    dims = QuditDims(3, 2)
    return Hamiltonian(
        dims,
        (
            HamTerm("X1", make_label(dims, [1, 0], [0, 0]), b),
            HamTerm("ZZ1", make_label(dims, [0, 0], [2, 1]), a),
            HamTerm("X2", make_label(dims, [0, 1], [0, 0]), b),
        ),
    )


def single_x(b=0.8):
    dims = QuditDims(3, 1)
    return Hamiltonian(dims, (HamTerm("X", make_label(dims, [1], [0]), b),))


def claw_control():
    """Center X X X with three Z leaves: admissible but claw-bound."""
    dims = QuditDims(3, 3)
    return Hamiltonian(
        dims,
        (
            HamTerm("c", make_label(dims, [1, 1, 1], [0, 0, 0]), 1.0),
            HamTerm("l1", make_label(dims, [0, 0, 0], [1, 0, 0]), 0.9),
            HamTerm("l2", make_label(dims, [0, 0, 0], [0, 1, 0]), 1.1),
            HamTerm("l3", make_label(dims, [0, 0, 0], [0, 0, 1]), 1.3),
        ),
    )


# -- charges and transfer ------------------------------------------------------


def test_charge_zero_is_identity_and_one_is_hamiltonian():
    orc = DenseOracle(baxter1(1.0, 0.7))
    assert np.allclose(orc.charge_matrix(0), np.eye(9))
    assert np.allclose(orc.charge_matrix(1), orc.hamiltonian_matrix())
    assert orc.alpha == 2
    with pytest.raises(AssertionError):
        orc.charge_matrix(3)


def test_charges_commute_baxter():
    orc = DenseOracle(baxter1(1.0, 0.7))
    rep = orc.check_charges_commute(tol=1e-9)
    assert rep.passed and rep.residual < 1e-12


def test_charge_two_explicit():
    # the only independent pairs in the 3-term dipath are {X1, X2}
    orc = DenseOracle(baxter1(0.9, 1.2))
    x1, x2 = orc.term_matrix("X1"), orc.term_matrix("X2")
    assert np.allclose(orc.charge_matrix(2), x1 @ x2)


def test_transfer_at_zero_and_single_vertex():
    orc = DenseOracle(baxter1())
    assert np.allclose(orc.transfer_matrix(0.0), np.eye(9))
    one = DenseOracle(single_x(0.8))
    x = 0.3 + 0.1j
    assert np.allclose(
        one.transfer_matrix(x), np.eye(3) - x * one.hamiltonian_matrix()
    )


def test_transfer_operators_commute():
    orc = DenseOracle(baxter1(1.1, 0.6))
    rng = np.random.default_rng(4)
    for _ in range(5):
        x, y = rng.uniform(-1, 1, 2) + 1j * rng.uniform(-1, 1, 2)
        tx, ty = orc.transfer_matrix(x), orc.transfer_matrix(y)
        assert np.linalg.norm(tx @ ty - ty @ tx) < 1e-12 * np.linalg.norm(tx)


def test_transfer_factorization():
    orc = DenseOracle(baxter1(1.0, 0.7))
    rep = orc.check_transfer_factorization(seed=11, trials=5, tol=1e-8)
    assert rep.passed, rep
    assert len(rep.details["points"]) == 5


# -- simplicial mode -----------------------------------------------------------


def chi_phases(orc, chi):
    """Dense commutation phase of chi past every term, as exact ints."""
    from parafermions.weyl import symplectic_phase

    return {
        t.id: symplectic_phase(t.label, chi, orc.dims) for t in orc.ham.terms
    }


def test_simplicial_mode_baxter():
    orc = DenseOracle(baxter1(1.0, 0.7))
    order = orc.ordering()
    assert order.order == ["X1", "ZZ1", "X2"]
    chi = orc.simplicial_mode()
    phases = chi_phases(orc, chi)
    assert phases == {"X1": 0, "ZZ1": 0, "X2": 1}
    # densely: chi commutes with X1 and ZZ1, and h_v chi = omega chi h_v
    cd = dense_label(chi, orc.dims)
    hv = orc.term_matrix("X2")
    om = np.exp(2j * np.pi / 3)
    assert np.allclose(hv @ cd, om * cd @ hv)
    for tid in ("X1", "ZZ1"):
        t = orc.term_matrix(tid)
        assert np.allclose(t @ cd, cd @ t)


def test_simplicial_mode_single_term():
    orc = DenseOracle(single_x())
    chi = orc.simplicial_mode()
    assert chi.alpha == (0,) and chi.beta == (2,)


def test_find_simplicial_mode_wrapper():
    ham = baxter1()
    orc = DenseOracle(ham)
    chi = find_simplicial_mode(ham, orc.graph, ["X1", "ZZ1", "X2"])
    assert chi == orc.simplicial_mode()


# -- modes and projectors --------------------------------------------------


def test_single_vertex_projectors_match_spectral_projectors():
    b = 0.8
    orc = DenseOracle(single_x(b))
    ms = orc.modes()
    h = orc.hamiltonian_matrix()
    om = np.exp(2j * np.pi / 3)
    eps = ms.energies.eps[0]
    assert abs(eps - b) < 1e-12
    for r in range(3):
        # Lagrange spectral projector onto eigenvalue omega^r * b
        proj = np.eye(3, dtype=complex)
        for s in range(3):
            if s == r:
                continue
            proj = proj @ (h - om ** s * b * np.eye(3)) / (
                om ** r * b - om ** s * b
            )
        assert np.allclose(ms.proj[(r, 0)], proj, atol=1e-10), r


def test_mode_checks_pass_baxter():
    orc = DenseOracle(baxter1(1.0, 0.7))
    ms = orc.modes()
    assert orc.check_mode_commutator(1e-9, ms).passed
    assert orc.check_mode_exchange(1e-8, ms).passed
    assert orc.check_projectors(1e-8, ms).passed
    assert orc.check_energy_decomposition(1e-8, ms).passed
    rep = orc.check_spectrum(1e-6)
    assert rep.passed and rep.details["multiplicity"] == 1


def test_commutator_eigenvalue_direction():
    # psi_{p,k} must raise the sector: H psi - psi H equals
    # (omega^(p+1) - omega^p) eps_k psi, not the p -> p-1 counterpart
    orc = DenseOracle(baxter1(1.0, 0.7))
    ms = orc.modes()
    h = orc.hamiltonian_matrix()
    om = np.exp(2j * np.pi / 3)
    psi = ms.psi[(0, 1)]
    eps = ms.energies.eps[1]
    comm = h @ psi - psi @ h
    good = (om - 1.0) * eps * psi
    bad = (1.0 - om ** 2) * eps * psi
    assert np.linalg.norm(comm - good) < 1e-9 * np.linalg.norm(good)
    assert np.linalg.norm(comm - bad) > 0.1 * np.linalg.norm(bad)


def test_modes_rescale_under_branch_rotation():
    orc = DenseOracle(baxter1(1.0, 0.7))
    base = orc.modes(branch=0)
    rot = orc.modes(branch=1)
    om = np.exp(2j * np.pi / 3)
    psi_a = base.psi[(1, 0)]
    psi_b = rot.psi[(1, 0)]
    assert np.allclose(psi_b * om, psi_a, atol=1e-10)
    # projectors are insensitive to the branch choice
    for key in base.proj:
        assert np.allclose(base.proj[key], rot.proj[key], atol=1e-10)
    assert orc.check_projectors(1e-8, rot).passed
    assert orc.check_mode_commutator(1e-9, rot).passed


def test_degenerate_spectrum_rejected():
    dims = QuditDims(3, 2)
    ham = Hamiltonian(
        dims,
        (
            HamTerm("u", make_label(dims, [1, 0], [0, 0]), 0.9),
            HamTerm("w", make_label(dims, [0, 1], [0, 0]), 0.9),
        ),
    )
    orc = DenseOracle(ham)
    assert orc.energies().degenerate
    with pytest.raises(DegenerateSpectrumError):
        orc.modes()


def test_claw_control_fails_loudly():
    orc = DenseOracle(claw_control())
    rep = orc.check_charges_commute(tol=1e-9)
    assert not rep.passed
    assert rep.residual > 1e-3
    with pytest.raises(ValueError):
        orc.ordering()


# -- eigenvalues utility ---------------------------------------------------


def test_eigenvalues_by_trace_moments():
    # eigenvalue multisets are pinned by tr(A^k); compare against explicit
    # matrix powers for random matrices
    rng = np.random.default_rng(14)
    for _ in range(10):
        mat = rng.standard_normal((30, 30)) + 1j * rng.standard_normal((30, 30))
        vals = eigenvalues(mat)
        power = np.eye(30, dtype=complex)
        for k in range(1, 5):
            power = power @ mat
            got = vals ** k
            assert abs(got.sum() - np.trace(power)) < 1e-7 * max(
                 1.0, abs(np.trace(power))
            )
        # sorted by (Re, Im)
        re = np.round(vals.real, 12)
        assert np.all(np.diff(re) > -1e-9)


# -- linear systems over Z_d -------------------------------------------------


def brute_solve_mod_d(rows, rhs, d):
    from itertools import product as iproduct

    ncols = len(rows[0])
    for cand in iproduct(range(d), repeat=ncols):
        if all(
            sum(r * c for r, c in zip(row, cand)) % d == want
            for row, want in zip(rows, rhs)
        ):
            return list(cand)
    return None


def test_solve_mod_d_matches_bruteforce():
    rng = np.random.default_rng(33)
    for d in (2, 3, 5):
        for _ in range(25):
            nrows, ncols = int(rng.integers(1, 5)), int(rng.integers(1, 5))
            rows = [[int(x) for x in rng.integers(0, d, ncols)] for _ in range(nrows)]
            rhs = [int(x) for x in rng.integers(0, d, nrows)]
            got = _solve_mod_d(rows, rhs, d)
            want = brute_solve_mod_d(rows, rhs, d)
            if want is None:
                assert got is None
            else:
                assert got is not None
                for row, want_r in zip(rows, rhs):
                    assert sum(r * c for r, c in zip(row, got)) % d == want_r


def test_solve_mod_d_composite():
    # 2x = 2 mod 4 has solutions (1 and 3); the solver must find one
    got = _solve_mod_d([[2]], [2], 4)
    assert got is not None and (2 * got[0]) % 4 == 2
    assert _solve_mod_d([[2]], [1], 4) is None


# -- root-of-unity identities --------------------------------------------------


def test_root_identities_small():
    for d in (2, 3, 4, 5, 6):
        rep = check_root_of_unity_identities(d, tol=1e-10)
        assert rep.passed, (d, rep.residual)


# -- module-level wrappers ----------------------------------------------------


def test_wrappers_agree_with_oracle():
    ham = baxter1(1.0, 0.7)
    orc = DenseOracle(ham)
    assert np.allclose(hamiltonian_matrix(ham), orc.hamiltonian_matrix())
    assert np.allclose(charge_matrix(ham, orc.graph, 2), orc.charge_matrix(2))
    assert np.allclose(
        transfer_matrix(ham, orc.graph, 0.4 + 0.2j),
        orc.transfer_matrix(0.4 + 0.2j),
    )
    ms = build_modes(ham, orc.graph)
    # alpha = 2 energies, d = 3 clock positions each
    assert set(ms.psi) == {(p, k) for p in range(3) for k in range(2)}


def test_dense_cap_enforced(monkeypatch):
    ham = baxter1()
    with pytest.raises(ResourceLimitError):
        DenseOracle(ham, cap=8)
    monkeypatch.setenv("PFSOLVE_DENSE_CAP", "8")
    with pytest.raises(ResourceLimitError):
        DenseOracle(ham)
    monkeypatch.setenv("PFSOLVE_DENSE_CAP", "9")
    DenseOracle(ham)  # exactly at the cap is allowed


def test_check_report_shape():
    rep = check_root_of_unity_identities(3)
    d = rep.as_dict()
    assert set(d) == {"name", "pass", "residual", "tolerance", "details"}
    assert d["pass"] is True
