"""Qudit Weyl algebra with exact phase bookkeeping.

Conventions
-----------
omega = exp(2*pi*i/d).  The shift and clock generators on a single qudit are

    X |k> = |k+1 mod d>        Z |k> = omega^k |k>

so that Z X = omega X Z.  An n-qudit operator is labelled by exponent
vectors alpha, beta in Z_d^n together with an integer phase:

    W(alpha, beta, phase2) = omega^(phase2/2) * prod_l X_l^alpha_l Z_l^beta_l

Phases live in half-units of omega (i.e. powers of exp(i*pi/d)) and are
stored as integers mod 2d, so every group-level computation here is exact;
floating point enters only in dense_label.

Site indices are flat integers 0..n-1.  In dense matrices site 0 is the
most significant tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError

DEFAULT_DENSE_CAP = 4096


@dataclass(frozen=True)
class QuditDims:
    """Qudit dimension d >= 2 and site count n >= 1."""

    d: int
    n: int

    def __post_init__(self):
        assert self.d >= 2, "qudit dimension must be at least 2"
        assert self.n >= 1, "need at least one site"

    @property
    def hilbert_dim(self) -> int:
        return self.d ** self.n


@dataclass(frozen=True)
class WeylLabel:
    """Exponent vectors plus an exact phase in half-units of omega.

    alpha and beta are tuples of ints in [0, d); phase2 is an int in
    [0, 2d).  The represented operator is
    omega^(phase2/2) * prod X^alpha Z^beta.
    """

    alpha: tuple
    beta: tuple
    phase2: int = 0

    @property
    def n(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class PhaseScalar:
    """A power of exp(i*pi/d): exponent k2 stored mod 2d."""

    k2: int
    d: int

    @property
    def value(self) -> complex:
        return np.exp(1j * np.pi * self.k2 / self.d)


def make_label(dims: QuditDims, alpha, beta, phase2: int = 0) -> WeylLabel:
    """Build a label, reducing exponents mod d and the phase mod 2d."""
    alpha = tuple(int(a) % dims.d for a in alpha)
    beta = tuple(int(b) % dims.d for b in beta)
    assert len(alpha) == dims.n and len(beta) == dims.n, "exponent length != n"
    return WeylLabel(alpha, beta, int(phase2) % (2 * dims.d))


def identity_label(dims: QuditDims) -> WeylLabel:
    return WeylLabel((0,) * dims.n, (0,) * dims.n, 0)


def is_identity(u: WeylLabel) -> bool:
    return u.phase2 == 0 and not any(u.alpha) and not any(u.beta)


def _check_dims(u: WeylLabel, dims: QuditDims):
    assert u.n == dims.n, "label has %d sites, dims has %d" % (u.n, dims.n)


def symplectic_phase(u: WeylLabel, v: WeylLabel, dims: QuditDims) -> int:
    """Return k in Z_d with  W_u W_v = omega^k W_v W_u.

    Antisymmetric: symplectic_phase(u, v) == -symplectic_phase(v, u) mod d.
    """
    _check_dims(u, dims)
    _check_dims(v, dims)
    k = sum(bu * av for bu, av in zip(u.beta, v.alpha)) - sum(
        au * bv for au, bv in zip(u.alpha, v.beta)
    )
    return k % dims.d


def conjugate_label(u: WeylLabel, dims: QuditDims) -> WeylLabel:
    """Label of the Hermitian conjugate W_u^dagger (an involution)."""
    _check_dims(u, dims)
    ab = sum(a * b for a, b in zip(u.alpha, u.beta))
    return make_label(
        dims,
        tuple(-a for a in u.alpha),
        tuple(-b for b in u.beta),
        2 * ab - u.phase2,
    )


def multiply_labels(u: WeylLabel, v: WeylLabel, dims: QuditDims):
    """Product of two labels: returns (label, scalar) with

        dense(u) @ dense(v) == scalar.value * dense(label).

    The label keeps the additive phases of the factors; the scalar carries
    the reordering phase omega^(beta_u . alpha_v) picked up by moving every
    Z of u past every X of v.
    """
    _check_dims(u, dims)
    _check_dims(v, dims)
    alpha = tuple(a + c for a, c in zip(u.alpha, v.alpha))
    beta = tuple(b + e for b, e in zip(u.beta, v.beta))
    cross = sum(bu * av for bu, av in zip(u.beta, v.alpha))
    label = make_label(dims, alpha, beta, u.phase2 + v.phase2)
    return label, PhaseScalar((2 * cross) % (2 * dims.d), dims.d)


def dth_power_scalar(u: WeylLabel, dims: QuditDims) -> PhaseScalar:
    """Scalar lambda with W_u^d = lambda * identity.

    X^d = Z^d = 1 exactly, so the d-th power of any label is a pure phase:
    accumulating the reordering phases of W*W*...*W gives
    k2 = d*phase2 + d*(d-1)*(alpha . beta)  (mod 2d).
    """
    _check_dims(u, dims)
    ab = sum(a * b for a, b in zip(u.alpha, u.beta))
    k2 = (dims.d * u.phase2 + dims.d * (dims.d - 1) * ab) % (2 * dims.d)
    return PhaseScalar(k2, dims.d)


def dense_label(u: WeylLabel, dims: QuditDims, cap: int | None = None) -> np.ndarray:
    """Dense d^n x d^n matrix of the labelled operator.

    W |k> = omega^(phase2/2) * omega^(beta . k) |k + alpha>, one nonzero
    per column.  Refuses when d^n exceeds the cap (default 4096).
    """
    _check_dims(u, dims)
    if cap is None:
        cap = DEFAULT_DENSE_CAP
    dim = dims.hilbert_dim
    if dim > cap:
        raise ResourceLimitError(
            "dense operator dimension %d exceeds cap %d" % (dim, cap)
        )
    d, n = dims.d, dims.n
    # digits[l, k] = l-th base-d digit of k, site 0 most significant
    ks = np.arange(dim)
    digits = np.empty((n, dim), dtype=np.int64)
    for l in range(n):
        digits[l] = (ks // d ** (n - 1 - l)) % d
    beta_dot = np.zeros(dim, dtype=np.int64)
    shift = np.zeros(dim, dtype=np.int64)
    for l in range(n):
        beta_dot += u.beta[l] * digits[l]
        shift += ((digits[l] + u.alpha[l]) % d) * d ** (n - 1 - l)
    phase = np.exp(1j * np.pi * u.phase2 / d) * np.exp(
        2j * np.pi * (beta_dot % d) / d
    )
    mat = np.zeros((dim, dim), dtype=complex)
    mat[shift, ks] = phase
    return mat
