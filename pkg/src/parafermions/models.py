"""Model generators and the JSON Hamiltonian interchange format.

Three built-in families:

* baxter: a clock chain, ``sum_j a Zdag_j Z_{j+1} + sum_j b X_j`` on n+1
  sites.  Its frustration graph is a dipath on 2n+1 vertices.
* alcaraz_pimenta: n terms ``a_j X_j ... X_{j+p-1} Z_{j+p}`` on n+p sites.
* three_coupling: a d=3 chain with three qudits per unit cell and six
  coupling types per cell.  Cell j occupies flat sites 3(j-1),
  3(j-1)+1, 3(j-1)+2; the last term of cell j reaches into site 3j.

The JSON schema is
``{"d": int, "n": int, "terms": [{"coeff", "phase2", "x", "z", "id"?}]}``
with exponent vectors of length n; unknown fields are rejected, exponents
are reduced mod d and phase2 mod 2d.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from numbers import Real

from .errors import HamiltonianFormatError
from .hamiltonian import HamTerm, Hamiltonian
from .weyl import QuditDims, make_label

FAMILIES = ("baxter", "alcaraz_pimenta", "three_coupling", "custom")


@dataclass(frozen=True)
class ModelSpec:
    """A model family name plus its parameter map."""

    family: str
    parameters: dict

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown model family %r" % (self.family,))

    def build(self) -> Hamiltonian:
        p = dict(self.parameters)
        if self.family == "baxter":
            return gen_baxter(**p)
        if self.family == "alcaraz_pimenta":
            return gen_alcaraz_pimenta(**p)
        if self.family == "three_coupling":
            return gen_three_coupling(**p)
        raise ValueError("custom models are built from JSON, not parameters")


def _check_coupling(name: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ValueError("coupling %s must be a real number" % name)
    v = float(value)
    if v == 0.0 or v != v:
        raise ValueError("coupling %s must be nonzero and finite" % name)
    return v


def gen_baxter(n: int, d: int, a: float, b: float) -> Hamiltonian:
    """Clock chain on n+1 sites: a Zdag_j Z_{j+1} couplings, b X_j fields.

    Terms are emitted in dipath order X1, ZZ1, X2, ZZ2, ..., X_{n+1}, and
    the frustration graph is the dipath oriented the same way.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    a = _check_coupling("a", a)
    b = _check_coupling("b", b)
    dims = QuditDims(d, n + 1)
    terms = []

    def x_term(j):
        alpha = [0] * (n + 1)
        alpha[j - 1] = 1
        return HamTerm("X%d" % j, make_label(dims, alpha, [0] * (n + 1)), b)

    def zz_term(j):
        beta = [0] * (n + 1)
        beta[j - 1] = d - 1
        beta[j] = 1
        return HamTerm("ZZ%d" % j, make_label(dims, [0] * (n + 1), beta), a)

    for j in range(1, n + 1):
        terms.append(x_term(j))
        terms.append(zz_term(j))
    terms.append(x_term(n + 1))
    return Hamiltonian(dims, tuple(terms))


def gen_alcaraz_pimenta(n: int, p: int, d: int, a=1.0) -> Hamiltonian:
    """n terms a_j X_j ... X_{j+p-1} Z_{j+p} on n+p sites.

    a may be a single coupling for all terms or a sequence of length n.
    Term j is frustrated exactly with terms j+1 .. j+p (edges point from
    lower to higher index), giving a path power graph.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if p < 1:
        raise ValueError("p must be >= 1")
    if d < 2:
        raise ValueError("d must be >= 2")
    if isinstance(a, (int, float)):
        coeffs = [_check_coupling("a", a)] * n
    else:
        coeffs = [_check_coupling("a[%d]" % i, v) for i, v in enumerate(a)]
        if len(coeffs) != n:
            raise ValueError("need %d couplings, got %d" % (n, len(coeffs)))
    sites = n + p
    dims = QuditDims(d, sites)
    terms = []
    for j in range(1, n + 1):
        alpha = [0] * sites
        beta = [0] * sites
        for s in range(j, j + p):
            alpha[s - 1] = 1
        beta[j + p - 1] = 1
        terms.append(
            HamTerm("a%d" % j, make_label(dims, alpha, beta), coeffs[j - 1])
        )
    return Hamiltonian(dims, tuple(terms))


def gen_three_coupling(n: int, a: float, b: float, c: float, dd: float,
                       e: float, f: float) -> Hamiltonian:
    """Six-coupling d=3 chain, cells j = 1..n, flat sites 3(j-1)..3j.

    Fractional positions j, j+1/3, j+2/3 map to flat indices 3(j-1),
    3(j-1)+1, 3(j-1)+2 and position n+1 to index 3n (3n+1 qudits total).
    Per cell, in order: a X Zdag straddling sites 0-1 of the cell, b
    (with a unit-root prefactor) XZdag at site 1 and Z at site 2, c XZ
    across sites 1-2, dd Zdag X across sites 1-2, e (half-unit prefactor)
    Zdag at site 1 and XZ at site 2, f Z Zdag into the next cell.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d3 = 3
    coeffs = {
        "a": _check_coupling("a", a),
        "b": _check_coupling("b", b),
        "c": _check_coupling("c", c),
        "d": _check_coupling("dd", dd),
        "e": _check_coupling("e", e),
        "f": _check_coupling("f", f),
    }
    sites = 3 * n + 1
    dims = QuditDims(d3, sites)
    terms = []
    for j in range(1, n + 1):
        s0, s1, s2 = 3 * (j - 1), 3 * (j - 1) + 1, 3 * (j - 1) + 2
        nxt = 3 * j
        cell = []

        def lab(axz, phase2=0):
            alpha = [0] * sites
            beta = [0] * sites
            for site, ax, bz in axz:
                alpha[site] = ax
                beta[site] = bz
            return make_label(dims, alpha, beta, phase2)

        cell.append(("a", lab([(s0, 1, 0), (s1, 0, 2)])))
        cell.append(("b", lab([(s1, 1, 2), (s2, 0, 1)], 2)))
        cell.append(("c", lab([(s1, 1, 0), (s2, 0, 1)])))
        cell.append(("d", lab([(s1, 0, 2), (s2, 1, 0)])))
        cell.append(("e", lab([(s1, 0, 2), (s2, 1, 1)], 1)))
        cell.append(("f", lab([(s2, 0, 1), (nxt, 0, 2)])))
        for name, label in cell:
            terms.append(HamTerm("%s%d" % (name, j), label, coeffs[name]))
    return Hamiltonian(dims, tuple(terms))


# -- JSON interchange --------------------------------------------------------

_TOP_KEYS = {"d", "n", "terms"}
_TERM_KEYS = {"coeff", "phase2", "x", "z", "id"}


def _parse_exponents(value, n, d, what, idx):
    if not isinstance(value, list) or len(value) != n:
        raise HamiltonianFormatError(
            "term %d: %r must be a list of %d integers" % (idx, what, n)
        )
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise HamiltonianFormatError(
                "term %d: %r entries must be integers" % (idx, what)
            )
        out.append(v % d)
    return out


def parse_hamiltonian(source) -> Hamiltonian:
    """Parse the JSON interchange format (a string or an already-loaded
    dict) into a Hamiltonian.  Strict: unknown fields are errors.
    """
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise HamiltonianFormatError("invalid JSON: %s" % exc) from None
    else:
        obj = source
    if not isinstance(obj, dict):
        raise HamiltonianFormatError("top level must be an object")
    extra = set(obj) - _TOP_KEYS
    if extra:
        raise HamiltonianFormatError("unknown fields %s" % sorted(extra))
    missing = _TOP_KEYS - set(obj)
    if missing:
        raise HamiltonianFormatError("missing fields %s" % sorted(missing))
    d, n = obj["d"], obj["n"]
    for name, v in (("d", d), ("n", n)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise HamiltonianFormatError("%r must be an integer" % name)
    if d < 2:
        raise HamiltonianFormatError("d must be >= 2, got %r" % d)
    if n < 1:
        raise HamiltonianFormatError("n must be >= 1, got %r" % n)
    if not isinstance(obj["terms"], list) or not obj["terms"]:
        raise HamiltonianFormatError("terms must be a non-empty list")
    dims = QuditDims(d, n)
    terms = []
    for idx, t in enumerate(obj["terms"]):
        if not isinstance(t, dict):
            raise HamiltonianFormatError("term %d: not an object" % idx)
        extra = set(t) - _TERM_KEYS
        if extra:
            raise HamiltonianFormatError(
                "term %d: unknown fields %s" % (idx, sorted(extra))
            )
        for req in ("coeff", "phase2", "x", "z"):
            if req not in t:
                raise HamiltonianFormatError(
                    "term %d: missing field %r" % (idx, req)
                )
        coeff = t["coeff"]
        if isinstance(coeff, bool) or not isinstance(coeff, Real):
            raise HamiltonianFormatError(
                "term %d: coeff must be a real number" % idx
            )
        coeff = float(coeff)
        if coeff == 0.0:
            raise HamiltonianFormatError("term %d: zero coefficient" % idx)
        phase2 = t["phase2"]
        if isinstance(phase2, bool) or not isinstance(phase2, int):
            raise HamiltonianFormatError(
                "term %d: phase2 must be an integer" % idx
            )
        alpha = _parse_exponents(t["x"], n, d, "x", idx)
        beta = _parse_exponents(t["z"], n, d, "z", idx)
        tid = t.get("id", "t%d" % idx)
        if not isinstance(tid, str) or not tid:
            raise HamiltonianFormatError(
                "term %d: id must be a non-empty string" % idx
            )
        terms.append(
            HamTerm(tid, make_label(dims, alpha, beta, phase2), coeff)
        )
    return Hamiltonian(dims, tuple(terms))


def emit_hamiltonian(ham: Hamiltonian) -> str:
    """Serialize to the JSON interchange format, deterministically."""
    obj = {
        "d": ham.dims.d,
        "n": ham.dims.n,
        "terms": [
            {
                "id": t.id,
                "coeff": t.coeff,
                "phase2": t.label.phase2,
                "x": list(t.label.alpha),
                "z": list(t.label.beta),
            }
            for t in ham.terms
        ],
    }
    return json.dumps(obj, indent=2, sort_keys=True)
