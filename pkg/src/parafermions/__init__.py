"""Frustration-graph solver for free-parafermion spin chains.

Workflow: describe a Hamiltonian as a sum of weighted qudit Weyl
operators, build its frustration graph, test the graph for a dipath
orientation / oriented indifference structure, read the spectrum off the
weighted independence polynomial, and (for small systems) verify every
step against dense matrices.
"""

from .errors import (
    AdmissibilityError,
    DegenerateSpectrumError,
    HamiltonianFormatError,
    NoSimplicialModeError,
    ResourceLimitError,
)
from .weyl import (
    QuditDims,
    WeylLabel,
    PhaseScalar,
    make_label,
    identity_label,
    is_identity,
    symplectic_phase,
    conjugate_label,
    multiply_labels,
    dth_power_scalar,
    dense_label,
)
from .hamiltonian import (
    HamTerm,
    Hamiltonian,
    check_admissible,
    build_frustration_graph,
    switch_hamiltonian,
)
from .graphs import (
    OrientedGraph,
    EliminationOrdering,
    SwitchingSolution,
    induced_subgraph,
    independent_sets,
    independence_number,
    is_claw_free,
    perfect_elimination_ordering,
    is_chordal,
    indifference_ordering,
    is_dipath_oriented,
    switching_solve,
    apply_switching,
    enumerate_switchings,
    oriented_peo,
    is_oriented_indifference,
)
from .indpoly import (
    IndependencePolynomial,
    indpoly,
    indpoly_bruteforce,
    indpoly_chordal,
    weights_for_spectrum,
)
from .spectrum import (
    SingleParticleEnergies,
    PredictedSpectrum,
    MatchReport,
    single_particle_energies,
    full_spectrum,
    match_spectra,
)
from .oracle import (
    CheckReport,
    DenseOracle,
    ModeSet,
    eigenvalues,
    hamiltonian_matrix,
    charge_matrix,
    transfer_matrix,
    find_simplicial_mode,
    build_modes,
    check_root_of_unity_identities,
)
from .models import (
    ModelSpec,
    gen_baxter,
    gen_alcaraz_pimenta,
    gen_three_coupling,
    parse_hamiltonian,
    emit_hamiltonian,
)
from .analysis import AnalysisReport, analyze_hamiltonian

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "DegenerateSpectrumError",
    "HamiltonianFormatError",
    "NoSimplicialModeError",
    "ResourceLimitError",
    "QuditDims",
    "WeylLabel",
    "PhaseScalar",
    "make_label",
    "identity_label",
    "is_identity",
    "symplectic_phase",
    "conjugate_label",
    "multiply_labels",
    "dth_power_scalar",
    "dense_label",
    "HamTerm",
    "Hamiltonian",
    "check_admissible",
    "build_frustration_graph",
    "switch_hamiltonian",
    "OrientedGraph",
    "EliminationOrdering",
    "SwitchingSolution",
    "induced_subgraph",
    "independent_sets",
    "independence_number",
    "is_claw_free",
    "perfect_elimination_ordering",
    "is_chordal",
    "indifference_ordering",
    "is_dipath_oriented",
    "switching_solve",
    "apply_switching",
    "enumerate_switchings",
    "oriented_peo",
    "is_oriented_indifference",
    "IndependencePolynomial",
    "indpoly",
    "indpoly_bruteforce",
    "indpoly_chordal",
    "weights_for_spectrum",
    "SingleParticleEnergies",
    "PredictedSpectrum",
    "MatchReport",
    "single_particle_energies",
    "full_spectrum",
    "match_spectra",
    "CheckReport",
    "DenseOracle",
    "ModeSet",
    "eigenvalues",
    "hamiltonian_matrix",
    "charge_matrix",
    "transfer_matrix",
    "find_simplicial_mode",
    "build_modes",
    "check_root_of_unity_identities",
    "ModelSpec",
    "gen_baxter",
    "gen_alcaraz_pimenta",
    "gen_three_coupling",
    "parse_hamiltonian",
    "emit_hamiltonian",
    "AnalysisReport",
    "analyze_hamiltonian",
]
