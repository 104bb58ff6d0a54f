"""Dense-matrix verification of the solvability structure.

Everything here is brute force on purpose: Hamiltonians are realized as
d^n x d^n matrices (within a size cap) and the structural claims are
checked as residual norms, so the graph-side machinery has an independent
referee.  Checks produce CheckReport records with a residual, the
tolerance used, and enough detail to see what was actually compared.

The dense size cap defaults to 4096 and can be overridden with the
PFSOLVE_DENSE_CAP environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import (
    DegenerateSpectrumError,
    NoSimplicialModeError,
    ResourceLimitError,
)
from .graphs import OrientedGraph, independent_sets, is_oriented_indifference
from .hamiltonian import Hamiltonian, build_frustration_graph
from .indpoly import (
    IndependencePolynomial,
    derivative_at,
    evaluate,
    indpoly_chordal,
    weights_for_spectrum,
)
from .spectrum import (
    SingleParticleEnergies,
    full_spectrum,
    match_spectra,
    single_particle_energies,
)
from .weyl import (
    WeylLabel,
    dense_label,
    identity_label,
    make_label,
    multiply_labels,
    symplectic_phase,
)

DEFAULT_TOL = 1e-8


def dense_cap() -> int:
    """Active dense-matrix cap (PFSOLVE_DENSE_CAP env var, default 4096)."""
    return int(os.environ.get("PFSOLVE_DENSE_CAP", 4096))


@dataclass
class CheckReport:
    """Outcome of one verification check."""

    name: str
    passed: bool
    residual: float
    tolerance: float
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": bool(self.passed),
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "details": self.details,
        }


@dataclass
class ModeSet:
    """Simplicial mode, normalisations, and the mode/projector matrices.

    psi maps (p, k) with p in Z_d, k in 1..alpha; proj maps (r, k)
    likewise.  proj_closed holds the independently computed closed form of
    each projector for cross-checking.
    """

    chi: WeylLabel
    last_vertex: str
    norms: np.ndarray
    psi: dict
    proj: dict
    proj_closed: dict
    energies: SingleParticleEnergies


def eigenvalues(mat: np.ndarray) -> np.ndarray:
    """Eigenvalues of a dense complex matrix, sorted by (Re, Im).

    Delegates to LAPACK's balanced Hessenberg + shifted-QR solver; a
    non-convergence surfaces as a numerical error rather than bad data.
    """
    vals = np.linalg.eigvals(np.asarray(mat, dtype=complex))
    return vals[np.lexsort((vals.imag, vals.real))]


def _rel(diff: np.ndarray, *refs) -> float:
    scale = max([float(np.linalg.norm(r)) for r in refs] + [1e-300])
    return float(np.linalg.norm(diff)) / scale


class DenseOracle:
    """Dense realization of one Hamiltonian and its derived operators.

    Caches term matrices, charges and mode sets; instances are cheap
    throwaways and hold per-instance workspaces only.
    """

    def __init__(self, ham: Hamiltonian, graph: OrientedGraph | None = None,
                 cap: int | None = None):
        self.ham = ham
        self.dims = ham.dims
        self.cap = dense_cap() if cap is None else cap
        dim = self.dims.hilbert_dim
        if dim > self.cap:
            raise ResourceLimitError(
                "dense verification needs d^n <= %d, got %d" % (self.cap, dim)
            )
        self.graph = build_frustration_graph(ham) if graph is None else graph
        self.omega = np.exp(2j * np.pi / self.dims.d)
        self._term = {
            t.id: t.coeff * dense_label(t.label, self.dims, self.cap)
            for t in ham.terms
        }
        self._charges = None
        self._alpha = None
        self._ordering = None
        self._chi = None
        self._poly = None
        self._poly_minus_v = None

    # -- basic operators ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self.dims.hilbert_dim

    def hamiltonian_matrix(self) -> np.ndarray:
        return sum(self._term.values())

    def term_matrix(self, term_id: str) -> np.ndarray:
        return self._term[term_id]

    def _set_product(self, ids) -> np.ndarray:
        """Dense product of terms over an independent set, in term order.

        The factors commute (asserted), so the order is irrelevant; the
        product is assembled exactly on labels and densified once.
        """
        terms = {t.id: t for t in self.ham.terms}
        chosen = [terms[i] for i in ids]
        for a, b in combinations(chosen, 2):
            assert symplectic_phase(a.label, b.label, self.dims) == 0, (
                "set product over non-commuting terms"
            )
        label = identity_label(self.dims)
        coeff = 1.0
        k2 = 0
        for t in chosen:
            label, scalar = multiply_labels(label, t.label, self.dims)
            coeff *= t.coeff
            k2 = (k2 + scalar.k2) % (2 * self.dims.d)
        phase = np.exp(1j * np.pi * k2 / self.dims.d)
        return coeff * phase * dense_label(label, self.dims, self.cap)

    def charges(self):
        """Independent-set charges Q_0..Q_alpha as dense matrices."""
        if self._charges is None:
            sets_by_size = []
            i = 0
            while True:
                sets = independent_sets(self.graph, i)
                if not sets:
                    break
                sets_by_size.append(sets)
                i += 1
            self._alpha = len(sets_by_size) - 1
            out = []
            for sets in sets_by_size:
                q = np.zeros((self.dim, self.dim), dtype=complex)
                for ids in sets:
                    q += self._set_product(ids)
                out.append(q)
            self._charges = out
        return self._charges

    @property
    def alpha(self) -> int:
        self.charges()
        return self._alpha

    def charge_matrix(self, i: int) -> np.ndarray:
        qs = self.charges()
        assert 0 <= i <= self._alpha, "charge index out of range"
        return qs[i]

    def transfer_matrix(self, x: complex) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for k, q in enumerate(self.charges()):
            out += (-x) ** k * q
        return out

    # -- spectral data -----------------------------------------------------

    def ordering(self):
        """Oriented indifference ordering; raises if none exists."""
        if self._ordering is None:
            got = is_oriented_indifference(self.graph)
            if got is None:
                raise ValueError(
                    "frustration graph is not oriented-indifference; "
                    "mode construction does not apply"
                )
            self._ordering = got
        return self._ordering

    def poly(self) -> IndependencePolynomial:
        if self._poly is None:
            weights = weights_for_spectrum(self.ham)
            self._poly = indpoly_chordal(self.graph, weights)
        return self._poly

    def poly_without_last(self) -> IndependencePolynomial:
        if self._poly_minus_v is None:
            v = self.ordering().order[-1]
            weights = weights_for_spectrum(self.ham)
            keep = [u for u in self.graph.vertices if u != v]
            sub = OrientedGraph(
                keep, [e for e in self.graph.edges if v not in e]
            )
            self._poly_minus_v = indpoly_chordal(
                sub, {u: weights[u] for u in keep}
            )
        return self._poly_minus_v

    def energies(self) -> SingleParticleEnergies:
        return single_particle_energies(self.poly(), self.dims.d)

    # -- simplicial mode ---------------------------------------------------

    def simplicial_mode(self, ordering=None) -> WeylLabel:
        """Label chi with W_u chi = chi W_u for u != v and
        W_v chi = omega chi W_v, v the last vertex of the ordering.

        Solved as a linear system over Z_d in the 2n exponents of chi
        (Gaussian elimination for prime d, exhaustive search otherwise).
        """
        if self._chi is not None and ordering is None:
            return self._chi
        order = self.ordering().order if ordering is None else list(ordering)
        v = order[-1]
        d, n = self.dims.d, self.dims.n
        if not _is_prime(d) and n > 3:
            raise ResourceLimitError(
                "simplicial-mode search needs prime d or n <= 3, "
                "got d=%d n=%d" % (d, n)
            )
        rows = []
        rhs = []
        for t in self.ham.terms:
            # unknown chi = (a | b); symplectic_phase(t, chi) =
            # beta_t . a - alpha_t . b  (mod d)
            rows.append(list(t.label.beta) + [(-x) % d for x in t.label.alpha])
            rhs.append(1 if t.id == v else 0)
        sol = _solve_mod_d(rows, rhs, d)
        if sol is None:
            raise NoSimplicialModeError(
                "no simplicial mode exists for last vertex %r" % v
            )
        chi = make_label(self.dims, sol[:n], sol[n:], 0)
        if ordering is None:
            self._chi = chi
        return chi

    # -- parafermionic modes -----------------------------------------------

    def _transfer_shifted(self, eps_inv: complex, p: int) -> np.ndarray:
        return self.transfer_matrix(eps_inv * self.omega ** (-p))

    def _transfer_tail(self, eps_inv: complex, p: int) -> np.ndarray:
        out = np.eye(self.dim, dtype=complex)
        for m in range(1, self.dims.d):
            out = out @ self._transfer_shifted(eps_inv, p + m)
        return out

    def _dZ_deps(self, eps_k: complex) -> complex:
        """d/d eps of Z(-eps^-d) at eps_k, via the chain rule."""
        d = self.dims.d
        y = -(eps_k ** (-d))
        return derivative_at(self.poly(), y) * d * eps_k ** (-d - 1)

    def modes(self, energies: SingleParticleEnergies | None = None,
              branch: int = 0) -> ModeSet:
        """Construct all parafermionic modes and projection operators.

        Degenerate single-particle energies or a vanishing normalisation
        are hard errors; both invalidate the construction.  branch rotates
        every normalisation by omega^branch; the checks must not care
        (modes rescale, projectors are degree-d homogeneous).
        """
        d = self.dims.d
        sp = self.energies() if energies is None else energies
        if sp.degenerate:
            raise DegenerateSpectrumError(
                "clustered polynomial roots; modes are not well defined"
            )
        alpha = len(sp.eps)
        chi_dense = dense_label(self.simplicial_mode(), self.dims, self.cap)
        zminus = self.poly_without_last()
        norms = np.zeros(alpha, dtype=complex)
        psi = {}
        for k in range(alpha):
            eps_k = complex(sp.eps[k])
            y_k = -(eps_k ** (-d))
            dz = self._dZ_deps(eps_k)
            scale = sum(abs(c) for c in self.poly().coeffs)
            if abs(dz) < 1e-8 * scale:
                raise DegenerateSpectrumError(
                    "polynomial derivative vanishes at energy %d" % (k + 1)
                )
            bracket = d * evaluate(zminus, y_k) * (eps_k * dz) ** (d - 1)
            nk = (1 - self.omega) * np.exp(np.log(bracket) / d)
            nk *= self.omega ** (branch % d)
            if abs(nk) < 1e-12:
                raise DegenerateSpectrumError(
                    "vanishing mode normalisation at energy %d" % (k + 1)
                )
            norms[k] = nk
            eps_inv = 1.0 / eps_k
            for p in range(d):
                head = self._transfer_shifted(eps_inv, p)
                tail = self._transfer_tail(eps_inv, p)
                psi[(p, k)] = (head @ chi_dense @ tail) / nk
        proj = {}
        proj_closed = {}
        for k in range(alpha):
            eps_k = complex(sp.eps[k])
            eps_inv = 1.0 / eps_k
            dz = self._dZ_deps(eps_k)
            for r in range(d):
                mat = np.eye(self.dim, dtype=complex)
                for p in range(1, d + 1):
                    mat = mat @ psi[((r - p) % d, k)]
                proj[(r, k)] = mat
                # closed form: the tail product times the derivative of the
                # shifted transfer operator, normalised by dZ/deps
                dT = np.zeros((self.dim, self.dim), dtype=complex)
                for j, q in enumerate(self.charges()):
                    if j == 0:
                        continue
                    dT += ((-self.omega ** (-r)) ** j) * (-j) * eps_k ** (
                        -j - 1
                    ) * q
                proj_closed[(r, k)] = (
                    self._transfer_tail(eps_inv, r) @ dT
                ) / dz
        v = self.ordering().order[-1]
        return ModeSet(self.simplicial_mode(), v, norms, psi, proj, proj_closed, sp)

    # -- checks --------------------------------------------------------

    def check_charges_commute(self, tol: float = DEFAULT_TOL) -> CheckReport:
        """All independent-set charges pairwise commute (relative Frobenius)."""
        qs = self.charges()
        worst = 0.0
        worst_pair = None
        for i, j in combinations(range(len(qs)), 2):
            r = _rel(qs[i] @ qs[j] - qs[j] @ qs[i], np.linalg.norm(qs[i]) * qs[j])
            if r > worst:
                worst, worst_pair = r, (i, j)
        return CheckReport(
            "charges_commute",
            worst <= tol,
            worst,
            tol,
            {"alpha": self.alpha, "worst_pair": worst_pair},
        )

    def check_transfer_factorization(
        self, seed: int, trials: int = 5, tol: float = DEFAULT_TOL
    ) -> CheckReport:
        """prod_m T(u omega^-m) equals Z(-u^d) times identity at random u.

        Sample points are drawn from the annulus 0.1 <= |u| <= 2; the
        residual is the Frobenius norm divided by the Hilbert dimension.
        """
        rng = np.random.default_rng(seed)
        d = self.dims.d
        poly = self.poly()
        worst = 0.0
        points = []
        for _ in range(trials):
            u = rng.uniform(0.1, 2.0) * np.exp(2j * np.pi * rng.uniform())
            factors = [
                self.transfer_matrix(u * self.omega ** (-m)) for m in range(d)
            ]
            prod_t = np.eye(self.dim, dtype=complex)
            for fac in factors:
                prod_t = prod_t @ fac
            rev = np.eye(self.dim, dtype=complex)
            for fac in reversed(factors):
                rev = rev @ fac
            # factor order is immaterial when the transfer operators commute
            assert float(np.linalg.norm(prod_t - rev)) / self.dim <= max(
                tol, 1e-8
            ), "transfer factors do not commute"
            target = evaluate(poly, -(u ** d)) * np.eye(self.dim)
            r = float(np.linalg.norm(prod_t - target)) / self.dim
            points.append(complex(u))
            worst = max(worst, r)
        return CheckReport(
            "transfer_factorization",
            worst <= tol,
            worst,
            tol,
            {"points": [[z.real, z.imag] for z in points]},
        )

    def check_mode_commutator(self, tol: float = DEFAULT_TOL,
                              modes: ModeSet | None = None) -> CheckReport:
        """[H, psi_{p,k}] = (omega^(p+1) - omega^p) eps_k psi_{p,k}.

        The eigenvalue is the difference of adjacent clock values: psi_{p,k}
        maps the omega^p eps_k sector of mode k onto the omega^(p+1) eps_k
        sector, which is the only coefficient compatible with the exchange
        relations and the projector decomposition (and equals
        (1 - omega) omega^(p+1) eps_k when d = 2).
        """
        ms = self.modes() if modes is None else modes
        h = self.hamiltonian_matrix()
        d = self.dims.d
        worst = 0.0
        for (p, k), psi in ms.psi.items():
            eps_k = ms.energies.eps[k]
            lhs = h @ psi - psi @ h
            rhs = (self.omega ** (p + 1) - self.omega ** p) * eps_k * psi
            worst = max(worst, _rel(lhs - rhs, lhs, rhs))
        return CheckReport(
            "mode_commutator", worst <= tol, worst, tol,
            {"modes": len(ms.psi)},
        )

    def check_mode_exchange(self, tol: float = DEFAULT_TOL,
                            modes: ModeSet | None = None) -> CheckReport:
        """Exchange relations between parafermionic modes.

        Distinct energies k != l:
          (w^p e_k - w^(q+1) e_l) psi_pk psi_ql
            + (w^q e_l - w^(p+1) e_k) psi_ql psi_pk = 0;
        same energy: psi_pk psi_qk = 0 whenever p != q+1.
        """
        ms = self.modes() if modes is None else modes
        d = self.dims.d
        om = self.omega
        eps = ms.energies.eps
        alpha = len(eps)
        worst = 0.0
        for k, l in product(range(alpha), repeat=2):
            for p, q in product(range(d), repeat=2):
                a = ms.psi[(p, k)]
                b = ms.psi[(q, l)]
                if k == l:
                    if p == (q + 1) % d:
                        continue
                    r = _rel(a @ b, np.linalg.norm(a) * b)
                else:
                    c1 = om ** p * eps[k] - om ** (q + 1) * eps[l]
                    c2 = om ** q * eps[l] - om ** (p + 1) * eps[k]
                    t1 = c1 * (a @ b)
                    t2 = c2 * (b @ a)
                    r = _rel(t1 + t2, t1, t2)
                worst = max(worst, r)
        return CheckReport(
            "mode_exchange", worst <= tol, worst, tol, {"alpha": alpha},
        )

    def check_projectors(self, tol: float = DEFAULT_TOL,
                         modes: ModeSet | None = None) -> CheckReport:
        """Projector relations: closed form, idempotence, orthogonality."""
        ms = self.modes() if modes is None else modes
        d = self.dims.d
        worst = 0.0
        detail = {}
        for key, mat in ms.proj.items():
            closed = ms.proj_closed[key]
            worst = max(worst, _rel(mat - closed, mat, closed))
            worst = max(worst, _rel(mat @ mat - mat, mat))
        detail["closed_form_and_idempotence"] = worst
        for k in range(len(ms.energies.eps)):
            for r, s in combinations(range(d), 2):
                a, b = ms.proj[(r, k)], ms.proj[(s, k)]
                worst = max(worst, _rel(a @ b, np.linalg.norm(a) * b))
                worst = max(worst, _rel(b @ a, np.linalg.norm(a) * b))
        return CheckReport(
            "projectors", worst <= tol, worst, tol, detail,
        )

    def check_energy_decomposition(self, tol: float = DEFAULT_TOL,
                                   modes: ModeSet | None = None) -> CheckReport:
        """H = sum_k sum_r omega^r eps_k P_{r,k}."""
        ms = self.modes() if modes is None else modes
        d = self.dims.d
        h = self.hamiltonian_matrix()
        acc = np.zeros_like(h)
        for (r, k), mat in ms.proj.items():
            acc += self.omega ** r * ms.energies.eps[k] * mat
        r = _rel(acc - h, h)
        return CheckReport("energy_decomposition", r <= tol, r, tol, {})

    def check_spectrum(self, tol: float = 1e-6) -> CheckReport:
        """Predicted free spectrum matches the dense eigenvalues."""
        sp = self.energies()
        pred = full_spectrum(sp)
        obs = eigenvalues(self.hamiltonian_matrix())
        report = match_spectra(pred, obs, tol)
        return CheckReport(
            "spectrum",
            report.ok,
            report.max_distance,
            tol,
            {
                "multiplicity": report.multiplicity,
                "max_multiplicity_deviation": report.max_multiplicity_deviation,
                "alpha": pred.alpha,
                "failure_mode": report.failure_mode,
            },
        )


def _solve_mod_d(rows, rhs, d):
    """Solve rows . x = rhs mod d; free variables 0; None if inconsistent.

    Gaussian elimination needs invertible pivots, so composite d falls
    back to exhaustive search (practical only for small systems).
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    if _is_prime(d):
        a = [list(r) + [b] for r, b in zip(rows, rhs)]
        piv_col_of_row = []
        row = 0
        for col in range(ncols):
            sel = None
            for r in range(row, m):
                if a[r][col] % d:
                    sel = r
                    break
            if sel is None:
                continue
            a[row], a[sel] = a[sel], a[row]
            inv = pow(a[row][col], -1, d)
            a[row] = [(x * inv) % d for x in a[row]]
            for r in range(m):
                if r != row and a[r][col] % d:
                    f = a[r][col]
                    a[r] = [(x - f * y) % d for x, y in zip(a[r], a[row])]
            piv_col_of_row.append(col)
            row += 1
            if row == m:
                break
        for r in range(row, m):
            if not any(x % d for x in a[r][:ncols]) and a[r][ncols] % d:
                return None
        x = [0] * ncols
        for r, col in enumerate(piv_col_of_row):
            x[col] = a[r][ncols] % d
        # verify (quadratic, cheap at this scale; also covers row >= m edge)
        for rr, b in zip(rows, rhs):
            if sum(c * v for c, v in zip(rr, x)) % d != b % d:
                return None
        return x
    if d ** ncols > 600_000:
        raise ResourceLimitError(
            "simplicial-mode search over %d^%d assignments refused" % (d, ncols)
        )
    for assign in product(range(d), repeat=ncols):
        if all(
            sum(c * v for c, v in zip(r, assign)) % d == b % d
            for r, b in zip(rows, rhs)
        ):
            return list(assign)
    return None


def _is_prime(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % f == 0:
            return False
        f += 1
    return True


def check_root_of_unity_identities(d: int, tol: float = 1e-10) -> CheckReport:
    """Two algebraic identities behind the transfer-operator telescoping.

    (1) (-1)^l sum over size-l subsets S of Z_d of prod omega^(-s)
        is 1, -1, 0 for l = 0, l = d, otherwise (checked by enumeration);
    (2) prod_{p=0}^{d-2} (1 - omega^(p+1)) = d.
    """
    om = np.exp(2j * np.pi / d)
    worst = 0.0
    for l in range(d + 1):
        total = 0.0 + 0.0j
        for s_set in combinations(range(d), l):
            term = 1.0 + 0.0j
            for s in s_set:
                term *= om ** (-s)
            total += term
        total *= (-1) ** l
        expect = 1.0 if l == 0 else (-1.0 if l == d else 0.0)
        worst = max(worst, abs(total - expect))
    prod_val = 1.0 + 0.0j
    for p in range(d - 1):
        prod_val *= 1 - om ** (p + 1)
    worst = max(worst, abs(prod_val - d))
    return CheckReport(
        "root_identities", worst <= tol, worst, tol, {"d": d},
    )


# -- module-level convenience wrappers --------------------------------------


def hamiltonian_matrix(ham: Hamiltonian, cap: int | None = None) -> np.ndarray:
    return DenseOracle(ham, cap=cap).hamiltonian_matrix()


def charge_matrix(ham: Hamiltonian, graph: OrientedGraph, i: int,
                  cap: int | None = None) -> np.ndarray:
    return DenseOracle(ham, graph, cap).charge_matrix(i)


def transfer_matrix(ham: Hamiltonian, graph: OrientedGraph, x: complex,
                    cap: int | None = None) -> np.ndarray:
    return DenseOracle(ham, graph, cap).transfer_matrix(x)


def find_simplicial_mode(ham: Hamiltonian, graph: OrientedGraph, ordering,
                         cap: int | None = None) -> WeylLabel:
    oracle = DenseOracle(ham, graph, cap)
    return oracle.simplicial_mode(ordering)


def build_modes(ham: Hamiltonian, graph: OrientedGraph,
                energies: SingleParticleEnergies | None = None,
                cap: int | None = None, branch: int = 0) -> ModeSet:
    return DenseOracle(ham, graph, cap).modes(energies, branch)
