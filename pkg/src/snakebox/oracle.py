"""Exhaustive references, independent of the QUBO machinery.

Depth-first searches over adjacency bitmasks. These exist to cross-check
solver output, so they share no code with the formulations.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceededError, ValidationError

DEFAULT_BUDGET = 10 ** 9


class _BudgetExceeded(Exception):
    pass


@dataclass
class OracleResult:
    """Search outcome.

    best_length counts edges for paths and vertices (equal to edges) for
    cycles. witness lists vertex indices in traversal order; for cycles the
    closing edge back to witness[0] is implied. exact is False when the
    expansion budget ran out, making best_length only a lower bound.
    """

    best_length: int
    witness: list = field(default_factory=list)
    nodes_expanded: int = 0
    exact: bool = True


def longest_induced_path(g, budget=DEFAULT_BUDGET, assume_vertex_transitive=False):
    """Longest induced (chord-free) path, by anchored depth-first search.

    With assume_vertex_transitive the search starts only from vertex 0,
    which is sound exactly when the automorphism group is transitive on
    vertices (true for hypercubes).
    """
    n = g.num_vertices
    if n == 0:
        return OracleResult(0)
    adj = g.adjacency
    starts = (0,) if assume_vertex_transitive else tuple(range(n))
    best_len = 0
    best_wit = [starts[0]]
    nodes = 0
    path = []

    def extend(tip, used, blocked):
        nonlocal best_len, best_wit, nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if len(path) - 1 > best_len:
            best_len = len(path) - 1
            best_wit = path.copy()
        cands = adj[tip] & ~used & ~blocked
        nb = blocked | adj[tip]
        while cands:
            bit = cands & -cands
            cands ^= bit
            w = bit.bit_length() - 1
            path.append(w)
            extend(w, used | bit, nb)
            path.pop()

    exact = True
    try:
        for s in starts:
            path = [s]
            extend(s, 1 << s, 0)
    except _BudgetExceeded:
        exact = False
    return OracleResult(best_len, best_wit, nodes, exact)


def longest_induced_cycle(g, budget=DEFAULT_BUDGET, assume_vertex_transitive=False):
    """Longest induced (chord-free) cycle.

    Each cycle is searched from its smallest vertex (the anchor); every
    other cycle vertex must exceed the anchor. A candidate adjacent to the
    anchor closes a cycle and is never walked through, since an internal
    vertex adjacent to the anchor would be a chord.
    """
    n = g.num_vertices
    if n == 0:
        return OracleResult(0)
    adj = g.adjacency
    anchors = (0,) if assume_vertex_transitive else tuple(range(n))
    best_len = 0
    best_wit = []
    nodes = 0
    path = []

    def extend(anchor, tip, used, blocked, mask_gt):
        nonlocal best_len, best_wit, nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        cands = adj[tip] & mask_gt & ~used & ~blocked
        nb = blocked if tip == anchor else blocked | adj[tip]
        first_hop = len(path) == 1
        while cands:
            bit = cands & -cands
            cands ^= bit
            w = bit.bit_length() - 1
            if not first_hop and adj[w] >> anchor & 1:
                # w can only close the cycle: were it internal, its edge to
                # the anchor would be a chord
                if len(path) >= 2 and len(path) + 1 > best_len:
                    best_len = len(path) + 1
                    best_wit = path + [w]
            else:
                path.append(w)
                extend(anchor, w, used | bit, nb, mask_gt)
                path.pop()

    exact = True
    try:
        for a in anchors:
            path = [a]
            extend(a, a, 1 << a, 0, -(1 << (a + 1)))
    except _BudgetExceeded:
        exact = False
    return OracleResult(best_len, best_wit, nodes, exact)


def max_common_induced_subgraph(g1, g2, cap=8):
    """Size and witness of a maximum common induced subgraph.

    Branches over g1's vertices in order, mapping each onto an unused g2
    vertex consistent with all earlier choices or skipping it. Returns
    (size, mapping) with mapping a list of (u, i) pairs. Refuses graphs
    above cap vertices; the search is exponential.
    """
    if g1.num_vertices > cap or g2.num_vertices > cap:
        raise CapExceededError(
            "mcis oracle capped at %d vertices per graph (got %d and %d)"
            % (cap, g1.num_vertices, g2.num_vertices))
    if g1.num_vertices == 0 or g2.num_vertices == 0:
        return 0, []
    n1, n2 = g1.num_vertices, g2.num_vertices
    adj1, adj2 = g1.adjacency, g2.adjacency
    best_size = 0
    best_map = []
    mapping = []

    def extend(u, used2):
        nonlocal best_size, best_map
        if u == n1:
            if len(mapping) > best_size:
                best_size = len(mapping)
                best_map = mapping.copy()
            return
        if len(mapping) + (n1 - u) <= best_size:
            return
        for i in range(n2):
            if used2 >> i & 1:
                continue
            ok = True
            for v, j in mapping:
                if (adj1[u] >> v & 1) != (adj2[i] >> j & 1):
                    ok = False
                    break
            if ok:
                mapping.append((u, i))
                extend(u + 1, used2 | 1 << i)
                mapping.pop()
        extend(u + 1, used2)

    extend(0, 0)
    return best_size, best_map
