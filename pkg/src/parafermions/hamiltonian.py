"""Weyl-term Hamiltonians and their frustration graphs.

A Hamiltonian is an ordered list of terms b_v * W_v with real nonzero
coefficients and pairwise distinct exponent labels.  Solvability analysis
only applies when every pair of terms either commutes or picks up a phase
of omega^(+1) or omega^(-1); the frustration graph records the omega^(+1)
direction as an edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import AdmissibilityError, HamiltonianFormatError
from .graphs import OrientedGraph
from .weyl import QuditDims, WeylLabel, conjugate_label, symplectic_phase

COEFF_FLOOR = 1e-300


@dataclass(frozen=True)
class HamTerm:
    """One term: a string id, a Weyl label, and a real coefficient."""

    id: str
    label: WeylLabel
    coeff: float


@dataclass(frozen=True)
class Hamiltonian:
    """Qudit dimensions plus an ordered tuple of terms.

    Term order is meaningful: it fixes the vertex order of the frustration
    graph and thereby every deterministic output downstream.
    """

    dims: QuditDims
    terms: tuple

    def __post_init__(self):
        ids = [t.id for t in self.terms]
        if len(set(ids)) != len(ids):
            raise HamiltonianFormatError("duplicate term ids")
        seen = {}
        for t in self.terms:
            if t.label.n != self.dims.n:
                raise HamiltonianFormatError(
                    "term %r has %d sites, expected %d"
                    % (t.id, t.label.n, self.dims.n)
                )
            key = (t.label.alpha, t.label.beta)
            if key in seen:
                raise HamiltonianFormatError(
                    "terms %r and %r carry the same exponent label"
                    % (seen[key], t.id)
                )
            seen[key] = t.id
            c = t.coeff
            if not isinstance(c, (int, float)) or not math.isfinite(c):
                raise HamiltonianFormatError("term %r has non-finite coefficient" % t.id)
            if abs(c) < COEFF_FLOOR:
                raise HamiltonianFormatError(
                    "term %r coefficient is zero or denormal" % t.id
                )
        if not self.terms:
            raise HamiltonianFormatError("a Hamiltonian needs at least one term")

    @property
    def ids(self):
        return [t.id for t in self.terms]

    def term(self, term_id: str) -> HamTerm:
        for t in self.terms:
            if t.id == term_id:
                return t
        raise KeyError(term_id)


def check_admissible(ham: Hamiltonian):
    """(True, []) or (False, violations) for pair phases outside {0, 1, d-1}.

    For d = 2 and d = 3 every phase is admissible; larger d can violate.
    """
    d = ham.dims.d
    allowed = {0, 1, (d - 1) % d}
    violations = []
    for u, v in combinations(ham.terms, 2):
        k = symplectic_phase(u.label, v.label, ham.dims)
        if k not in allowed:
            violations.append((u.id, v.id, k))
    return (not violations), violations


def build_frustration_graph(ham: Hamiltonian) -> OrientedGraph:
    """Oriented frustration graph: edge (u, v) iff W_u W_v = omega W_v W_u.

    Raises AdmissibilityError if any pair phase is outside {0, +1, -1}.
    For d = 2 the two directions coincide (+1 == -1 mod 2); the edge is
    emitted from the earlier term to the later one.
    """
    ok, violations = check_admissible(ham)
    if not ok:
        raise AdmissibilityError(violations)
    d = ham.dims.d
    edges = []
    for u, v in combinations(ham.terms, 2):
        k = symplectic_phase(u.label, v.label, ham.dims)
        if k == 0:
            continue
        if d == 2:
            edges.append((u.id, v.id))
        elif k == 1:
            edges.append((u.id, v.id))
        else:
            edges.append((v.id, u.id))
    return OrientedGraph(ham.ids, edges)


def switch_hamiltonian(ham: Hamiltonian, switch_set) -> Hamiltonian:
    """Conjugate the listed terms: b W -> b W^dagger.

    On the frustration graph this reverses exactly the edges with one
    endpoint in the set (vertex switching), since conjugating one side of
    a pair flips the sign of its commutation phase while conjugating both
    sides leaves it fixed.
    """
    s = set(switch_set)
    unknown = s - set(ham.ids)
    if unknown:
        raise KeyError("switching unknown term ids: %s" % sorted(unknown))
    terms = []
    for t in ham.terms:
        if t.id in s:
            terms.append(HamTerm(t.id, conjugate_label(t.label, ham.dims), t.coeff))
        else:
            terms.append(t)
    return Hamiltonian(ham.dims, tuple(terms))
