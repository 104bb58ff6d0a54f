"""Oriented graphs and the decision procedures used on frustration graphs.

A graph here is a finite set of vertices (hashable ids, kept in a fixed
order) with at most one directed edge per unordered pair and no loops.
Independence questions ignore orientation; the orientation-sensitive
procedures (dipath check, switching, oriented eliminations) are the point
of this module.

All procedures are deterministic: candidate loops run in vertex order and
outputs are reproducible for identical inputs.  Enumerative routines are
meant for desk-scale graphs and enforce explicit size caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ResourceLimitError

ENUMERATION_CAP = 24  # vertices, for subset-enumeration routines
SWITCHING_ENUM_CAP = 1024  # solutions, for switching enumeration
_BACKTRACK_STATE_CAP = 200_000


class OrientedGraph:
    """Vertices in a fixed order plus a set of directed edges.

    Edges are (u, v) pairs of vertex ids; (u, v) and (v, u) must not both
    be present.  Treated as immutable once built.
    """

    def __init__(self, vertices, edges=()):
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        assert len(self._index) == len(self.vertices), "duplicate vertex ids"
        es = []
        seen = set()
        for u, v in edges:
            assert u in self._index and v in self._index, "edge endpoint not a vertex"
            assert u != v, "self-loops are not allowed"
            key = frozenset((u, v))
            assert key not in seen, "both orientations present for {%r, %r}" % (u, v)
            seen.add(key)
            es.append((u, v))
        self.edges = frozenset(es)
        # adjacency bitmasks over vertex indices; adj ignores orientation
        m = len(self.vertices)
        self._adj = [0] * m
        self._out = [0] * m
        for u, v in self.edges:
            i, j = self._index[u], self._index[v]
            self._adj[i] |= 1 << j
            self._adj[j] |= 1 << i
            self._out[i] |= 1 << j

    # -- basic queries ----------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return "OrientedGraph(%d vertices, %d edges)" % (
            len(self.vertices),
            len(self.edges),
        )

    def index(self, v) -> int:
        return self._index[v]

    def has_edge(self, u, v) -> bool:
        return (u, v) in self.edges

    def adjacent(self, u, v) -> bool:
        return bool(self._adj[self._index[u]] >> self._index[v] & 1)

    def neighbors(self, v):
        """Neighbors ignoring orientation, in vertex order."""
        mask = self._adj[self._index[v]]
        return [u for i, u in enumerate(self.vertices) if mask >> i & 1]

    def adjacency_masks(self):
        return list(self._adj)

    def out_masks(self):
        return list(self._out)

    def to_dot(self) -> str:
        """DOT text: every vertex listed, edges in vertex order."""
        lines = ["digraph {"]
        for v in self.vertices:
            lines.append('  "%s";' % v)
        for u, v in sorted(self.edges, key=lambda e: (self._index[e[0]], self._index[e[1]])):
            lines.append('  "%s" -> "%s";' % (u, v))
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class EliminationOrdering:
    """A vertex ordering with the kind of elimination property it carries.

    kind is one of "peo", "indifference", "oriented-peo",
    "oriented-indifference".  strategy records how an oriented PEO was
    found ("greedy" or "backtracking"); None for the other kinds.
    """

    order: list
    kind: str
    strategy: str | None = None


@dataclass
class SwitchingSolution:
    """Outcome of the switching feasibility system.

    When feasible, switch_set lists the vertices to switch (free variables
    pinned to 0, so the answer is deterministic).  When infeasible,
    certificate lists induced 2-paths (u, v, w) whose parity equations sum
    to a contradiction.
    """

    feasible: bool
    switch_set: list = field(default_factory=list)
    certificate: list = field(default_factory=list)


def _cap_check(g: OrientedGraph, cap: int, what: str):
    if len(g) > cap:
        raise ResourceLimitError(
            "%s needs |V| <= %d, got %d" % (what, cap, len(g))
        )


# -- independence ----------------------------------------------------------


def induced_subgraph(g: OrientedGraph, keep) -> OrientedGraph:
    """Subgraph on the given vertices, preserving order and orientation."""
    keep = set(keep)
    assert keep <= set(g.vertices), "unknown vertices in keep-set"
    vs = [v for v in g.vertices if v in keep]
    es = [(u, v) for u, v in g.edges if u in keep and v in keep]
    return OrientedGraph(vs, es)


def _independent_set_masks(adj, restrict=None):
    """Yield bitmasks of all independent sets (the empty set included)."""
    m = len(adj)
    full = (1 << m) - 1 if restrict is None else restrict

    def rec(mask, cands):
        yield mask
        while cands:
            v = (cands & -cands).bit_length() - 1
            cands &= cands - 1
            yield from rec(mask | (1 << v), cands & ~adj[v])

    yield from rec(0, full)


def independent_sets(g: OrientedGraph, size: int, cap: int = ENUMERATION_CAP):
    """All independent sets of exactly the given size, as vertex lists.

    Deterministic order: sets are produced in lexicographic order of their
    sorted vertex indices.
    """
    assert size >= 0
    _cap_check(g, cap, "independent-set enumeration")
    if size == 0:
        return [[]]
    adj = g.adjacency_masks()
    out = []
    for mask in _independent_set_masks(adj):
        if mask.bit_count() == size:
            out.append([g.vertices[i] for i in range(len(g)) if mask >> i & 1])
    out.sort(key=lambda vs: [g.index(v) for v in vs])
    return out


def independence_number(g: OrientedGraph, cap: int = ENUMERATION_CAP) -> int:
    """Size of a largest independent set (branch and bound)."""
    if len(g) == 0:
        return 0
    _cap_check(g, cap, "independence number")
    adj = g.adjacency_masks()

    def best(cands):
        if cands == 0:
            return 0
        # branch on the highest-degree candidate; bound by candidate count
        v = max(
            (i for i in range(len(adj)) if cands >> i & 1),
            key=lambda i: (adj[i] & cands).bit_count(),
        )
        with_v = 1 + best(cands & ~adj[v] & ~(1 << v))
        rest = cands & ~(1 << v)
        if rest.bit_count() <= with_v:
            return with_v
        return max(with_v, best(rest))

    return best((1 << len(g)) - 1)


def is_claw_free(g: OrientedGraph):
    """(True, None) or (False, (center, a, b, c)) for an induced claw."""
    adj = g.adjacency_masks()
    m = len(g)
    for c in range(m):
        nbrs = [i for i in range(m) if adj[c] >> i & 1]
        for a, b, e in combinations(nbrs, 3):
            if not (adj[a] >> b & 1 or adj[a] >> e & 1 or adj[b] >> e & 1):
                vs = g.vertices
                return False, (vs[c], vs[a], vs[b], vs[e])
    return True, None


# -- chordality and indifference -------------------------------------------


def _lexbfs_order(adj):
    """Lexicographic BFS by partition refinement; returns vertex indices."""
    m = len(adj)
    buckets = [list(range(m))]
    order = []
    while buckets:
        bucket = buckets[0]
        v = bucket.pop(0)
        if not bucket:
            buckets.pop(0)
        order.append(v)
        new_buckets = []
        for b in buckets:
            hit = [u for u in b if adj[v] >> u & 1]
            miss = [u for u in b if not adj[v] >> u & 1]
            if hit:
                new_buckets.append(hit)
            if miss:
                new_buckets.append(miss)
        buckets = new_buckets
    return order


def _is_peo(adj, order_idx) -> bool:
    """Check that each vertex's earlier neighbors form a clique.

    Standard deferred test: the earlier neighbor placed latest must
    dominate the rest; transitivity over the ordering gives the full
    clique property.
    """
    pos = [0] * len(adj)
    for i, v in enumerate(order_idx):
        pos[v] = i
    seen = 0
    for v in order_idx:
        earlier = adj[v] & seen
        if earlier:
            u = max(
                (j for j in range(len(adj)) if earlier >> j & 1),
                key=lambda j: pos[j],
            )
            if earlier & ~(adj[u] | (1 << u)):
                return False
        seen |= 1 << v
    return True


def perfect_elimination_ordering(g: OrientedGraph):
    """A PEO (earlier neighbors of each vertex form a clique), or None.

    Lexicographic BFS produces a valid ordering exactly when the graph is
    chordal; the candidate is verified before being returned, so a None
    answer is a certified non-chordality verdict.
    """
    if len(g) == 0:
        return EliminationOrdering([], "peo")
    adj = g.adjacency_masks()
    order_idx = _lexbfs_order(adj)
    if not _is_peo(adj, order_idx):
        return None
    return EliminationOrdering([g.vertices[i] for i in order_idx], "peo")


def is_chordal(g: OrientedGraph) -> bool:
    return perfect_elimination_ordering(g) is not None


def _umbrella_search(adj, out, oriented: bool):
    """DFS for an ordering with the consecutive-clique (umbrella) property.

    Appending w to a partial ordering is allowed when the already-placed
    neighbors of w form a clique occupying a contiguous suffix of the
    ordering; with oriented=True every edge must additionally point from
    the placed vertex to w.  Returns a list of vertex indices or None.
    """
    m = len(adj)
    if m == 0:
        return []
    # candidate try-order: low degree first makes path-like graphs fast
    try_order = sorted(range(m), key=lambda i: (adj[i].bit_count(), i))

    order = []
    placed = 0

    def can_append(w):
        earlier = adj[w] & placed
        if oriented and out[w] & placed:
            return False  # an edge would point from w back to a placed vertex
        if earlier == 0:
            return True
        # earlier neighbors must be a suffix of the current ordering
        k = len(order)
        t = None
        for pos in range(k - 1, -1, -1):
            if earlier >> order[pos] & 1:
                t = pos
            else:
                break
        run = 0 if t is None else k - t
        if run != earlier.bit_count():
            return False
        # and that suffix must be a clique
        suffix = order[k - run :]
        for a, b in combinations(suffix, 2):
            if not adj[a] >> b & 1:
                return False
        return True

    def rec():
        if len(order) == m:
            return True
        for w in try_order:
            if placed_has(w):
                continue
            if can_append(w):
                append(w)
                if rec():
                    return True
                pop()
        return False

    # tiny closures to keep the bitmask in sync with the list
    def placed_has(w):
        return placed >> w & 1

    def append(w):
        nonlocal placed
        order.append(w)
        placed |= 1 << w

    def pop():
        nonlocal placed
        w = order.pop()
        placed &= ~(1 << w)

    return order if rec() else None


def _monotone_induced_paths(adj, order_idx) -> bool:
    """Explicit scan: every induced path is monotone under the ordering.

    An induced path fails monotonicity iff it has an interior local
    extremum, so checking all induced 2-paths (u, v, w) suffices.
    """
    pos = [0] * len(adj)
    for i, v in enumerate(order_idx):
        pos[v] = i
    m = len(adj)
    for v in range(m):
        nbrs = [u for u in range(m) if adj[v] >> u & 1]
        for u, w in combinations(nbrs, 2):
            if adj[u] >> w & 1:
                continue
            if (pos[v] < pos[u] and pos[v] < pos[w]) or (
                pos[v] > pos[u] and pos[v] > pos[w]
            ):
                return False
    return True


def indifference_ordering(g: OrientedGraph):
    """An ordering under which every induced path is monotone, or None.

    Searches for a consecutive-clique ordering (which implies the monotone
    path property) and re-verifies the result with the explicit scan.
    """
    _cap_check(g, ENUMERATION_CAP, "indifference ordering search")
    if len(g) == 0:
        return EliminationOrdering([], "indifference")
    if perfect_elimination_ordering(g) is None:
        return None  # not chordal, so certainly not an indifference graph
    adj = g.adjacency_masks()
    order_idx = _umbrella_search(adj, g.out_masks(), oriented=False)
    if order_idx is None:
        return None
    assert _monotone_induced_paths(adj, order_idx)
    return EliminationOrdering([g.vertices[i] for i in order_idx], "indifference")


# -- orientation-sensitive procedures ---------------------------------------


def _induced_two_paths(g: OrientedGraph):
    """Induced paths u - v - w (u, w nonadjacent), u < w by vertex index."""
    adj = g.adjacency_masks()
    m = len(g)
    out = []
    for v in range(m):
        nbrs = [u for u in range(m) if adj[v] >> u & 1]
        for u, w in combinations(nbrs, 2):
            if not adj[u] >> w & 1:
                out.append((u, v, w))
    return out


def is_dipath_oriented(g: OrientedGraph):
    """(True, None) or (False, (u, v, w)) for an inconsistent induced 2-path.

    Consistency of every induced 2-path is sufficient for all induced paths,
    so this scan decides the property.
    """
    out = g.out_masks()
    for u, v, w in _induced_two_paths(g):
        # consistent means the path is traversed u->v->w or w->v->u
        if (out[u] >> v & 1) != (out[v] >> w & 1):
            vs = g.vertices
            return False, (vs[u], vs[v], vs[w])
    return True, None


def switching_solve(g: OrientedGraph) -> SwitchingSolution:
    """Find a vertex set whose switching makes the graph dipath-oriented.

    Switching a vertex reverses all its incident edges.  Each induced
    2-path (u, v, w) forces s_u + s_w = x_(u,v) + x_(v,w) over GF(2), where
    x_e indicates the current direction.  Rows are solved by elimination
    with bitset rows; free variables are set to 0.  Infeasibility comes
    with a certificate: a subset of 2-paths whose equations are
    contradictory.
    """
    m = len(g)
    out = g.out_masks()
    paths = _induced_two_paths(g)
    # row = (mask of s-variables, rhs bit, history mask of path indices)
    rows = []
    for idx, (u, v, w) in enumerate(paths):
        c = (out[u] >> v & 1) ^ (out[v] >> w & 1)
        rows.append([(1 << u) | (1 << w), c, 1 << idx])

    pivots = {}  # variable -> row
    for row in rows:
        mask, rhs, hist = row
        for var in sorted(pivots):
            if mask >> var & 1:
                pmask, prhs, phist = pivots[var]
                mask ^= pmask
                rhs ^= prhs
                hist ^= phist
        if mask == 0:
            if rhs == 1:
                cert = [
                    tuple(g.vertices[x] for x in paths[i])
                    for i in range(len(paths))
                    if hist >> i & 1
                ]
                return SwitchingSolution(False, [], cert)
            continue
        var = (mask & -mask).bit_length() - 1
        pivots[var] = (mask, rhs, hist)

    # back-substitute with free variables pinned to 0
    value = [0] * m
    for var in sorted(pivots, reverse=True):
        mask, rhs, _ = pivots[var]
        acc = rhs
        rest = mask & ~(1 << var)
        while rest:
            j = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            acc ^= value[j]
        value[var] = acc
    switch = [g.vertices[i] for i in range(m) if value[i]]
    sol = SwitchingSolution(True, switch, [])
    ok, _ = is_dipath_oriented(apply_switching(g, switch))
    assert ok, "switching solution failed post-hoc dipath check"
    return sol


def apply_switching(g: OrientedGraph, switch_set) -> OrientedGraph:
    """Reverse every edge with exactly one endpoint in switch_set."""
    s = set(switch_set)
    assert s <= set(g.vertices), "switching unknown vertices"
    es = []
    for u, v in g.edges:
        if (u in s) != (v in s):
            es.append((v, u))
        else:
            es.append((u, v))
    return OrientedGraph(g.vertices, es)


def enumerate_switchings(g: OrientedGraph, cap: int = SWITCHING_ENUM_CAP):
    """All switching sets that make the graph dipath-oriented, up to cap.

    Brute force over vertex subsets is avoided: the solved system's free
    variables are toggled.  Deterministic order (free variables counted in
    binary, vertex order).
    """
    base = switching_solve(g)
    if not base.feasible:
        return []
    m = len(g)
    out = g.out_masks()
    paths = _induced_two_paths(g)
    rows = []
    for u, v, w in paths:
        c = (out[u] >> v & 1) ^ (out[v] >> w & 1)
        rows.append(((1 << u) | (1 << w), c))
    pivots = {}
    for mask, rhs in rows:
        for var in sorted(pivots):
            if mask >> var & 1:
                pmask, prhs = pivots[var]
                mask ^= pmask
                rhs ^= prhs
        if mask:
            var = (mask & -mask).bit_length() - 1
            pivots[var] = (mask, rhs)
    free = [i for i in range(m) if i not in pivots]
    sols = []
    count = min(1 << len(free), cap)
    for assign in range(count):
        value = [0] * m
        for bit, var in enumerate(free):
            value[var] = assign >> bit & 1
        for var in sorted(pivots, reverse=True):
            mask, rhs = pivots[var]
            acc = rhs
            rest = mask & ~(1 << var)
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc ^= value[j]
            value[var] = acc
        sols.append([g.vertices[i] for i in range(m) if value[i]])
    return sols


def _opeo_candidates(adj, out, alive):
    """Vertices eliminable last: neighbors form a clique, all edges inbound."""
    cands = []
    rest = alive
    while rest:
        v = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        if out[v] & alive:
            continue
        nbrs = adj[v] & alive
        ok = True
        nn = nbrs
        while nn:
            a = (nn & -nn).bit_length() - 1
            nn &= nn - 1
            if nbrs & ~(adj[a] | (1 << a)):
                ok = False
                break
        if ok:
            cands.append(v)
    return cands


def oriented_peo(g: OrientedGraph):
    """A PEO whose earlier-neighbor edges all point at the later vertex.

    Built by repeatedly eliminating a vertex whose remaining neighbors form
    a clique and whose remaining edges are all inbound.  Eliminating any
    such vertex is safe (moving it to the end of a valid ordering stays
    valid), so the greedy pass is expected to be complete; an exhaustive
    backtracking pass over elimination choices is kept as a safety net and
    the strategy that succeeded is recorded.
    """
    m = len(g)
    if m == 0:
        return EliminationOrdering([], "oriented-peo", "greedy")
    adj = g.adjacency_masks()
    out = g.out_masks()

    order_rev = []
    alive = (1 << m) - 1
    while alive:
        cands = _opeo_candidates(adj, out, alive)
        if not cands:
            break
        v = cands[0]
        order_rev.append(v)
        alive &= ~(1 << v)
    if not alive:
        return EliminationOrdering(
            [g.vertices[i] for i in reversed(order_rev)], "oriented-peo", "greedy"
        )

    if m > ENUMERATION_CAP:
        raise ResourceLimitError(
            "oriented-PEO backtracking needs |V| <= %d, got %d"
            % (ENUMERATION_CAP, m)
        )
    dead = set()
    states = 0

    def rec(alive, acc):
        nonlocal states
        if alive == 0:
            return acc
        if alive in dead:
            return None
        states += 1
        if states > _BACKTRACK_STATE_CAP:
            raise ResourceLimitError("oriented-PEO search state cap exceeded")
        for v in _opeo_candidates(adj, out, alive):
            got = rec(alive & ~(1 << v), acc + [v])
            if got is not None:
                return got
        dead.add(alive)
        return None

    got = rec((1 << m) - 1, [])
    if got is None:
        return None
    return EliminationOrdering(
        [g.vertices[i] for i in reversed(got)], "oriented-peo", "backtracking"
    )


def is_oriented_indifference(g: OrientedGraph):
    """An indifference ordering with every edge pointing forward, or None.

    This is the direct search route; the equivalent two-step route
    (dipath orientation plus oriented PEO) is exposed separately and the
    two are cross-checked in the test suite.
    """
    _cap_check(g, ENUMERATION_CAP, "oriented indifference search")
    if len(g) == 0:
        return EliminationOrdering([], "oriented-indifference")
    if perfect_elimination_ordering(g) is None:
        return None
    adj = g.adjacency_masks()
    out = g.out_masks()
    order_idx = _umbrella_search(adj, out, oriented=True)
    if order_idx is None:
        return None
    assert _monotone_induced_paths(adj, order_idx)
    pos = {v: i for i, v in enumerate(order_idx)}
    for u, v in g.edges:
        assert pos[g.index(u)] < pos[g.index(v)], "edge against the ordering"
    return EliminationOrdering(
        [g.vertices[i] for i in order_idx], "oriented-indifference"
    )
