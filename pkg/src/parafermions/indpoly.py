"""Weighted independence polynomials.

Z_G(x) = sum over independent sets I of prod_{v in I} x * lam_v, with
coefficients stored ascending so coeffs[k] collects the size-k sets.
Two routes are provided: a direct accumulation over all vertex subsets,
and a clique-separator recursion along a perfect elimination ordering for
chordal graphs.  They are independent implementations and are tested
against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .graphs import ENUMERATION_CAP, OrientedGraph, perfect_elimination_ordering
from .hamiltonian import Hamiltonian
from .weyl import dth_power_scalar

# vertex weights are a plain dict: term id -> float
VertexWeights = dict


@dataclass(frozen=True)
class IndependencePolynomial:
    """Coefficients ascending; coeffs[0] == 1, degree == independence number."""

    coeffs: tuple

    def __post_init__(self):
        assert len(self.coeffs) >= 1 and self.coeffs[0] == 1.0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return evaluate(self, x)


def evaluate(poly: IndependencePolynomial, x):
    """Horner evaluation; accepts real or complex x."""
    acc = 0.0 + 0.0j if isinstance(x, complex) else 0.0
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def derivative_at(poly: IndependencePolynomial, x):
    acc = 0.0 + 0.0j if isinstance(x, complex) else 0.0
    for k in range(poly.degree, 0, -1):
        acc = acc * x + k * poly.coeffs[k]
    return acc


def weights_for_spectrum(ham: Hamiltonian) -> VertexWeights:
    """Spectral vertex weights lam_v = b_v^d * sigma_v.

    sigma_v is the scalar with W_v^d = sigma_v * identity; it is a sign
    for every integer phase convention, and anything else is rejected.
    """
    d = ham.dims.d
    out = {}
    for t in ham.terms:
        k2 = dth_power_scalar(t.label, ham.dims).k2
        if k2 % d != 0:
            raise ValueError(
                "term %r: d-th power scalar is not real (k2 = %d)" % (t.id, k2)
            )
        sigma = 1.0 if k2 == 0 else -1.0
        out[t.id] = (t.coeff ** d) * sigma
    return out


def _resolve_weights(g: OrientedGraph, weights) -> np.ndarray:
    if weights is None:
        return np.ones(len(g))
    lam = np.array([float(weights[v]) for v in g.vertices])
    assert np.all(lam != 0.0), "vertex weights must be nonzero"
    return lam


def indpoly_bruteforce(
    g: OrientedGraph, weights=None, cap: int = ENUMERATION_CAP
) -> IndependencePolynomial:
    """Exact coefficient accumulation over every vertex subset.

    Vectorized over all 2^|V| bitmasks; independent of the chordal
    recursion, so the two can cross-check each other.
    """
    m = len(g)
    if m > cap:
        raise ResourceLimitError(
            "brute-force polynomial needs |V| <= %d, got %d" % (cap, m)
        )
    lam = _resolve_weights(g, weights)
    if m == 0:
        return IndependencePolynomial((1.0,))
    adj = g.adjacency_masks()
    masks = np.arange(1 << m, dtype=np.int64)
    indep = np.ones(1 << m, dtype=bool)
    for v in range(m):
        has_v = (masks >> v & 1).astype(bool)
        indep &= ~(has_v & ((masks & adj[v]) != 0))
    sizes = np.zeros(1 << m, dtype=np.int64)
    prods = np.ones(1 << m)
    for v in range(m):
        has_v = (masks >> v & 1).astype(bool)
        sizes += has_v
        prods[has_v] *= lam[v]
    alpha = int(sizes[indep].max())
    coeffs = np.zeros(alpha + 1)
    np.add.at(coeffs, sizes[indep], prods[indep])
    return IndependencePolynomial(tuple(coeffs))


def indpoly_chordal(g: OrientedGraph, weights=None) -> IndependencePolynomial:
    """Chordal-graph polynomial by elimination along a PEO.

    For a vertex v whose neighbors form a clique,
    Z_G = Z_{G - v} + x lam_v Z_{G - N[v]}; eliminating the last PEO vertex
    keeps both residual subsets eliminable.  Residual subsets are memoized
    (keys are vertex bitmasks), which is what makes deep recursions cheap.
    """
    peo = perfect_elimination_ordering(g)
    if peo is None:
        raise ValueError("graph is not chordal")
    m = len(g)
    lam = _resolve_weights(g, weights)
    adj = g.adjacency_masks()
    rank = {g.index(v): i for i, v in enumerate(peo.order)}
    memo = {}

    def rec(alive: int):
        if alive == 0:
            return (1.0,)
        got = memo.get(alive)
        if got is not None:
            return got
        # eliminate the alive vertex latest in the PEO
        v = max(
            (i for i in range(m) if alive >> i & 1), key=lambda i: rank[i]
        )
        without = rec(alive & ~(1 << v))
        closed = rec(alive & ~(1 << v) & ~adj[v])
        out = list(without) + [0.0] * (len(closed) + 1 - len(without))
        for k, c in enumerate(closed):
            out[k + 1] += lam[v] * c
        out = tuple(out)
        memo[alive] = out
        return out

    coeffs = rec((1 << m) - 1)
    return IndependencePolynomial(tuple(float(c) for c in coeffs))


def indpoly(g: OrientedGraph, weights=None, cap: int = ENUMERATION_CAP):
    """Chordal recursion when possible, otherwise brute force under the cap."""
    if perfect_elimination_ordering(g) is not None:
        return indpoly_chordal(g, weights)
    return indpoly_bruteforce(g, weights, cap)
