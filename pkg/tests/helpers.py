"""Shared random-instance generators for the test suite."""

from itertools import combinations

from parafermions.graphs import OrientedGraph


def random_oriented(rng, m, p=0.4):
    """Random oriented graph: each pair gets an edge with probability p."""
    es = []
    for u, v in combinations(range(m), 2):
        if rng.random() < p:
            es.append((u, v) if rng.random() < 0.5 else (v, u))
    return OrientedGraph(range(m), es)


def random_chordal(rng, m, attach_max=4):
    """Chordal graph by construction, with random edge orientations.

    Vertex v > 0 attaches to a random subset of a previously recorded
    clique; a subset of a clique is a clique, so reverse insertion order is
    a perfect elimination ordering by construction.
    """
    assert m >= 1
    cliques = [[0]]
    edges = []
    for v in range(1, m):
        base = cliques[int(rng.integers(0, len(cliques)))]
        k = int(rng.integers(0, min(len(base), attach_max) + 1))
        chosen = (
            [base[i] for i in rng.choice(len(base), size=k, replace=False)]
            if k
            else []
        )
        for u in chosen:
            edges.append((u, v) if rng.random() < 0.5 else (v, u))
        cliques.append(chosen + [v])
    return OrientedGraph(range(m), edges)


def random_nonzero_weights(rng, g, lo=-2.0, hi=2.0, floor=1e-3):
    """Vertex weights drawn from [lo, hi] with zero excluded."""
    out = {}
    for v in g.vertices:
        w = 0.0
        while abs(w) < floor:
            w = float(rng.uniform(lo, hi))
        out[v] = w
    return out
