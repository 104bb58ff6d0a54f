"""One-call analysis of a Hamiltonian: graph, orderings, polynomial, energies.

The report is a plain dataclass with an as_dict() that uses only JSON
types (complex numbers become [re, im] pairs) so the CLI can serialize
it deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import (
    EliminationOrdering,
    OrientedGraph,
    SwitchingSolution,
    is_dipath_oriented,
    is_oriented_indifference,
    switching_solve,
)
from .hamiltonian import Hamiltonian, build_frustration_graph, check_admissible
from .indpoly import indpoly, weights_for_spectrum
from .spectrum import SingleParticleEnergies, single_particle_energies


def complex_pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


@dataclass
class AnalysisReport:
    """Everything the graph side can say about one Hamiltonian.

    Fields past `violations` are None when the Hamiltonian is not
    admissible (no frustration graph exists); energies is None unless
    the graph is an oriented indifference graph.
    """

    admissible: bool
    violations: list
    graph: OrientedGraph | None = None
    dipath_oriented: bool | None = None
    dipath_witness: tuple | None = None
    switching: SwitchingSolution | None = None
    oriented_indifference: EliminationOrdering | None = None
    alpha: int | None = None
    weights: dict | None = None
    indpoly: tuple | None = None
    energies: SingleParticleEnergies | None = None
    checks: list = field(default_factory=list)

    def __post_init__(self):
        if self.energies is not None:
            assert self.oriented_indifference is not None, (
                "energies are only defined for oriented indifference graphs"
            )

    def as_dict(self) -> dict:
        # every key is always present (null when not applicable), so the
        # report schema is stable across admissible and rejected inputs
        return {
            "admissible": self.admissible,
            "violations": [list(v) for v in self.violations],
            "checks": [c.as_dict() for c in self.checks],
            "graph": None if self.graph is None else {
                "vertices": list(self.graph.vertices),
                "edges": sorted([u, v] for u, v in self.graph.edges),
            },
            "dipath_oriented": self.dipath_oriented,
            "dipath_witness": (
                None if self.dipath_witness is None
                else list(self.dipath_witness)
            ),
            "switching": None if self.switching is None else {
                "feasible": self.switching.feasible,
                "switch_set": sorted(self.switching.switch_set),
                "certificate": [list(p) for p in self.switching.certificate],
            },
            "oriented_indifference": (
                None if self.oriented_indifference is None
                else list(self.oriented_indifference.order)
            ),
            "alpha": self.alpha,
            "weights": (
                None if self.weights is None
                else {k: float(v) for k, v in self.weights.items()}
            ),
            "indpoly": (
                None if self.indpoly is None
                else [float(c) for c in self.indpoly]
            ),
            "energies": (
                None if self.energies is None else energies_dict(self.energies)
            ),
        }


def energies_dict(sp: SingleParticleEnergies) -> dict:
    return {
        "eps": [complex_pair(z) for z in sp.eps],
        "roots": [complex_pair(z) for z in sp.roots],
        "residuals": [float(r) for r in sp.residuals],
        "degenerate": bool(sp.degenerate),
        "d": sp.d,
    }


def analyze_hamiltonian(ham: Hamiltonian) -> AnalysisReport:
    """Admissibility, frustration graph, orientation diagnostics,
    independence polynomial, and (when applicable) single-particle
    energies for one Hamiltonian.
    """
    ok, violations = check_admissible(ham)
    if not ok:
        return AnalysisReport(False, violations)
    graph = build_frustration_graph(ham)
    dipath, witness = is_dipath_oriented(graph)
    switching = switching_solve(graph)
    ordering = is_oriented_indifference(graph)
    weights = weights_for_spectrum(ham)
    poly = indpoly(graph, weights)
    energies = None
    if ordering is not None:
        energies = single_particle_energies(poly, ham.dims.d)
    return AnalysisReport(
        admissible=True,
        violations=[],
        graph=graph,
        dipath_oriented=dipath,
        dipath_witness=witness,
        switching=switching,
        oriented_indifference=ordering,
        alpha=poly.degree,
        weights=weights,
        indpoly=poly.coeffs,
        energies=energies,
    )
