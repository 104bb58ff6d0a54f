"""Single-particle energies and the assembled many-body spectrum.

The independence polynomial Z_G factors the model: each root y_k of
Z_G gives a single-particle energy eps_k with -eps_k^(-d) = y_k, defined
up to a factor omega, and the full spectrum is every combination
sum_k omega^(x_k) eps_k over x in Z_d^alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceLimitError
from .indpoly import IndependencePolynomial, derivative_at, evaluate

FULL_SPECTRUM_CAP = 2_000_000
# multiple roots are only computable to about sqrt(machine eps), so the
# "suspiciously close" threshold must sit above that scatter
DEGENERACY_TOL = 1e-7


@dataclass
class SingleParticleEnergies:
    """Energies eps_k (one branch each), their roots, and diagnostics."""

    eps: np.ndarray
    roots: np.ndarray
    residuals: np.ndarray
    degenerate: bool
    d: int


@dataclass
class PredictedSpectrum:
    values: np.ndarray
    alpha: int
    d: int
    truncated: bool


@dataclass
class MatchReport:
    ok: bool
    max_distance: float
    multiplicity: int
    max_multiplicity_deviation: int
    tolerance: float
    failure_mode: str | None = None
    details: dict = field(default_factory=dict)


def omega_table(d: int) -> np.ndarray:
    """Powers of omega = exp(2 pi i / d), indexed 0..d-1."""
    return np.exp(2j * np.pi * np.arange(d) / d)


def single_particle_energies(
    poly: IndependencePolynomial, d: int
) -> SingleParticleEnergies:
    """Principal-branch energies from the polynomial roots.

    Roots come from the companion matrix (QR iteration underneath) and get
    two Newton polish steps.  eps_k is the principal d-th root of -1/y_k,
    and the list is sorted by (|eps|, arg eps).  Roots closer than 1e-8
    relative to their scale set the degenerate flag.
    """
    assert d >= 2
    assert poly.degree >= 1, "need a polynomial of degree >= 1"
    # coefficients are real by construction; the real companion matrix
    # keeps conjugate symmetry and lands exact double roots far better
    # than its complex counterpart
    coeffs = np.asarray(poly.coeffs, dtype=float)
    ys = np.roots(coeffs[::-1]).astype(complex)
    for _ in range(2):
        vals = np.array([evaluate(poly, complex(y)) for y in ys])
        ders = np.array([derivative_at(poly, complex(y)) for y in ys])
        safe = np.abs(ders) > 1e-300
        cand = np.where(safe, ys - vals / np.where(safe, ders, 1.0), ys)
        cand_vals = np.array([evaluate(poly, complex(y)) for y in cand])
        # near multiple roots the derivative vanishes and a Newton step is
        # pure noise; keep a step only when it reduces the residual
        improve = np.abs(cand_vals) < np.abs(vals)
        ys = np.where(improve, cand, ys)
    # roots are nonzero because coeffs[0] == 1
    eps = np.exp(np.log(-1.0 / ys) / d)
    order = np.lexsort((np.angle(eps), np.abs(eps)))
    eps = eps[order]
    ys = ys[order]
    residuals = np.abs([evaluate(poly, complex(-(e ** (-d)))) for e in eps])
    scale = max(np.max(np.abs(ys)), 1.0)
    degenerate = False
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            if abs(ys[i] - ys[j]) < DEGENERACY_TOL * scale:
                degenerate = True
    return SingleParticleEnergies(eps, ys, np.asarray(residuals), degenerate, d)


def full_spectrum(
    energies, d: int | None = None, cap: int = FULL_SPECTRUM_CAP, truncate: bool = False
) -> PredictedSpectrum:
    """All sums sum_k omega^(x_k) eps_k, x enumerated lexicographically.

    Accepts a SingleParticleEnergies or a plain sequence of eps values.
    Sizes beyond the cap raise unless truncate=True, which keeps the first
    cap combinations (lexicographic in x) and flags the result.
    """
    if isinstance(energies, SingleParticleEnergies):
        eps = np.asarray(energies.eps, dtype=complex)
        d = energies.d if d is None else d
    else:
        eps = np.asarray(energies, dtype=complex)
        assert d is not None, "d is required with a plain energy list"
    alpha = len(eps)
    total = d ** alpha
    truncated = False
    if total > cap:
        if not truncate:
            raise ResourceLimitError(
                "full spectrum has %d values, cap is %d" % (total, cap)
            )
        truncated = True
    om = omega_table(d)
    count = min(total, cap)
    if not truncated:
        values = np.zeros(1, dtype=complex)
        for k in range(alpha):
            branch = om * eps[k]
            values = (values[:, None] + branch[None, :]).ravel()
    else:
        idx = np.arange(count, dtype=np.int64)
        values = np.zeros(count, dtype=complex)
        for k in range(alpha):
            digit = (idx // d ** (alpha - 1 - k)) % d
            values += om[digit] * eps[k]
    return PredictedSpectrum(values, alpha, d, truncated)


def _sort_key(values: np.ndarray, quantum: float):
    """Sort by real part quantized to the given scale, then imaginary part.

    Quantizing the primary key keeps conjugate pairs (equal real parts up
    to rounding) in a consistent order across the two multisets.
    """
    re = np.round(np.asarray(values).real / quantum) * quantum
    return np.lexsort((np.asarray(values).imag, re))


def match_spectra(predicted, observed, tol: float = 1e-6) -> MatchReport:
    """Compare a predicted spectrum against observed eigenvalues.

    The observed count must be an integer multiple m of the predicted
    count; each predicted value is then expected m times.  Both multisets
    are sorted on (quantized Re, Im) and paired index by index; the report
    carries the largest paired distance and per-value multiplicity
    deviations (observed count vs m for each distinct predicted value).
    """
    pred = np.asarray(
        predicted.values if isinstance(predicted, PredictedSpectrum) else predicted,
        dtype=complex,
    )
    obs = np.asarray(observed, dtype=complex)
    if len(pred) == 0 or len(obs) == 0:
        return MatchReport(False, np.inf, 0, 0, tol, "empty input")
    if len(obs) % len(pred) != 0:
        return MatchReport(
            False,
            np.inf,
            0,
            0,
            tol,
            "size mismatch: %d observed vs %d predicted" % (len(obs), len(pred)),
        )
    mult = len(obs) // len(pred)
    scale = max(float(np.max(np.abs(pred))), float(np.max(np.abs(obs))), 1.0)
    quantum = 1e-8 * scale
    expanded = np.repeat(pred, mult)
    expanded = expanded[_sort_key(expanded, quantum)]
    obs_sorted = obs[_sort_key(obs, quantum)]
    max_dist = float(np.max(np.abs(expanded - obs_sorted)))

    # multiplicity audit: cluster predicted values, count observed nearby
    pred_sorted = pred[_sort_key(pred, quantum)]
    clusters = [[pred_sorted[0], 1]]
    for z in pred_sorted[1:]:
        if abs(z - clusters[-1][0]) <= quantum * 10:
            clusters[-1][1] += 1
        else:
            clusters.append([z, 1])
    centers = np.array([c for c, _ in clusters])
    counts = np.zeros(len(clusters), dtype=int)
    for z in obs:
        counts[int(np.argmin(np.abs(centers - z)))] += 1
    deviations = counts - mult * np.array([n for _, n in clusters])
    max_dev = int(np.max(np.abs(deviations))) if len(deviations) else 0

    ok = max_dist <= tol and max_dev == 0
    return MatchReport(
        ok,
        max_dist,
        mult,
        max_dev,
        tol,
        None if ok else "distance or multiplicity out of tolerance",
        {"cluster_count": len(clusters)},
    )
