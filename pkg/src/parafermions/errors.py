"""Shared exception types.

Exit-code mapping in the CLI relies on these distinctions: format errors
are usage errors (exit 2), resource-cap refusals are exit 3, and failed
verification checks are exit 1.
"""


class HamiltonianFormatError(ValueError):
    """Raised when a Hamiltonian file or term list violates the schema."""


class AdmissibilityError(ValueError):
    """Raised when term pairs fall outside the allowed commutation phases.

    Carries the offending pairs as a list of (id_u, id_v, phase) triples.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        pairs = ", ".join("(%s, %s): %d" % v for v in self.violations[:8])
        more = "" if len(self.violations) <= 8 else ", ..."
        super().__init__("inadmissible term pairs: %s%s" % (pairs, more))


class ResourceLimitError(RuntimeError):
    """Raised when an operation would exceed a configured size cap."""


class NoSimplicialModeError(RuntimeError):
    """Raised when the simplicial-mode linear system has no solution."""


class DegenerateSpectrumError(RuntimeError):
    """Raised when clustered polynomial roots make mode construction unsafe."""
