"""Decode assignments back into subgraphs and verify them independently.

Decoding trusts only the bit vector, the instance's graphs, and the penalty
definitions; it never reads the built QUBO. The weighted sum of the term
energies reported here must reproduce the QUBO energy exactly, which the
test suite checks on random assignments.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ValidationError
from .formulations import (
    KIND_CITB, KIND_INDUCED_SUBGRAPH, KIND_LONGEST_CYCLE, KIND_LONGEST_PATH,
    KIND_MCIS, KIND_SITB,
    TERM_CONNECTIVITY, TERM_MATCHING, TERM_OBJECTIVE, TERM_STRUCTURE,
    TERM_SUCCESSION, term_names)
from .graphs import hypercube_graph

_PATH_KINDS = (KIND_SITB, KIND_LONGEST_PATH)
_CYCLE_KINDS = (KIND_CITB, KIND_LONGEST_CYCLE)


@dataclass
class DecodedSolution:
    """What an assignment encodes, plus its penalty-term breakdown.

    mapping holds every set x[u, i] as a (u, i) pair, selected the pattern
    vertices with at least one set row bit. sequence lists target labels in
    pattern order for path and cycle kinds (cycle order for cycles, closing
    edge implied). length counts path edges, cycle vertices, or mapped
    vertices depending on the kind; it is 0 when invalid.
    """

    valid: bool
    reason: str | None
    mapping: list = field(default_factory=list)
    selected: list = field(default_factory=list)
    sequence: list = field(default_factory=list)
    length: int = 0
    term_energies: dict = field(default_factory=dict)
    total_energy: int = 0


def _check_bits(layout, bits):
    bits = [int(b) for b in bits]
    if len(bits) != layout.num_vars:
        raise ValidationError("expected %d bits, got %d" % (layout.num_vars, len(bits)))
    if any(b not in (0, 1) for b in bits):
        raise ValidationError("assignment entries must be 0 or 1")
    return bits


def _term_energies(inst, bits):
    """Recompute each penalty family from its definition on raw bits."""
    lay = inst.layout
    v1, v2 = lay.v1_size, lay.v2_size
    adj1, adj2 = inst.g1.adjacency, inst.g2.adjacency
    names = term_names(inst.kind)

    def pbit(u):
        return bits[lay.p(u)] if lay.has_p else 1

    entries = [(u, i) for u in range(v1) for i in range(v2) if bits[lay.x(u, i)]]
    row = [0] * v1
    col = [0] * v2
    for u, i in entries:
        row[u] += 1
        col[i] += 1

    energies = {}
    matching = 0
    for u in range(v1):
        matching += (pbit(u) - row[u]) ** 2
    for i in range(v2):
        matching += (bits[lay.s(i)] - col[i]) ** 2
    energies[TERM_MATCHING] = matching

    structure = 0
    for a in range(len(entries)):
        u, i = entries[a]
        for b in range(a + 1, len(entries)):
            v, j = entries[b]
            if u == v:
                continue
            if adj1[u] >> v & 1:
                if i != j and not (adj2[i] >> j & 1):
                    structure += 1
            elif i != j and adj2[i] >> j & 1:
                structure += 1
    energies[TERM_STRUCTURE] = structure

    if TERM_OBJECTIVE in names:
        energies[TERM_OBJECTIVE] = -sum(pbit(u) for u in range(v1))
    if TERM_CONNECTIVITY in names:
        if inst.kind in _PATH_KINDS:
            connectivity = (1 - pbit(inst.anchor)) ** 2
            for u, v in inst.g1.edges:
                connectivity += (pbit(u) - pbit(v)) ** 2
        else:
            connectivity = (1 - sum(pbit(c) for c in inst.host.cycle_vertices)) ** 2
        energies[TERM_CONNECTIVITY] = connectivity
    if TERM_SUCCESSION in names:
        succession = 0
        for idx, pv in enumerate(inst.host.path_vertices):
            succession += (pbit(pv) - sum(pbit(s) for s in inst.host.successors[idx])) ** 2
        energies[TERM_SUCCESSION] = succession
    return energies, entries, row, col


def _weighted_total(inst, energies):
    total = 0
    for term, value in energies.items():
        total += inst.weights.value_of(term) * value
    return total


def _mapping_violation(inst, entries, row):
    """Multiplicity and structure-preservation checks shared by all kinds."""
    v1 = inst.layout.v1_size
    for u in range(v1):
        if row[u] > 1:
            return "pattern vertex %d mapped to multiple targets" % u
    seen = {}
    for u, i in entries:
        if i in seen:
            return "target vertex %d assigned to pattern vertices %d and %d" % (i, seen[i], u)
        seen[i] = u
    adj1, adj2 = inst.g1.adjacency, inst.g2.adjacency
    for a in range(len(entries)):
        u, i = entries[a]
        for b in range(a + 1, len(entries)):
            v, j = entries[b]
            if adj1[u] >> v & 1:
                if not (adj2[i] >> j & 1):
                    return ("pattern edge (%d,%d) lands on non-adjacent targets (%d,%d)"
                            % (u, v, i, j))
            elif adj2[i] >> j & 1:
                return ("pattern non-edge (%d,%d) lands on adjacent targets (%d,%d)"
                        % (u, v, i, j))
    return None


def decode(inst, bits):
    """Interpret an assignment for the given instance.

    Valid means: the x block encodes an injective, structure-preserving
    partial map whose domain has the right shape for the kind (everything
    for induced-subgraph, any set for MCIS, an anchored contiguous prefix
    for paths, a backbone prefix plus its closing vertex for cycles).
    """
    bits = _check_bits(inst.layout, bits)
    energies, entries, row, col = _term_energies(inst, bits)
    total = _weighted_total(inst, energies)
    selected = [u for u in range(inst.layout.v1_size) if row[u]]
    target_of = {u: i for u, i in entries}

    def invalid(reason):
        return DecodedSolution(False, reason, entries, selected, [], 0, energies, total)

    if inst.kind not in (KIND_INDUCED_SUBGRAPH, KIND_MCIS) and not entries:
        return invalid("empty selection")
    violation = _mapping_violation(inst, entries, row)
    if violation:
        return invalid(violation)

    if inst.kind == KIND_INDUCED_SUBGRAPH:
        for u in range(inst.layout.v1_size):
            if row[u] == 0:
                return invalid("pattern vertex %d is unmapped" % u)
        sequence = []
        length = len(entries)
    elif inst.kind == KIND_MCIS:
        sequence = []
        length = len(entries)
    elif inst.kind in _PATH_KINDS:
        k = len(selected)
        if selected != list(range(k)):
            return invalid("selected vertices do not form an anchored contiguous prefix")
        sequence = [inst.g2.label_of(target_of[u]) for u in range(k)]
        length = k - 1
    else:
        host = inst.host
        path_set = set(host.path_vertices)
        cycle_set = set(host.cycle_vertices)
        backbone = [u for u in selected if u in path_set]
        closers = [u for u in selected if u in cycle_set]
        m = len(backbone)
        shape_ok = (backbone == list(range(m)) and m >= 3
                    and closers == [host.cycle_vertex_for(m)])
        if not shape_ok:
            return invalid("selection is not a backbone prefix closed by its cycle vertex")
        order = list(range(m)) + closers
        sequence = [inst.g2.label_of(target_of[u]) for u in order]
        length = m + 1
    return DecodedSolution(True, None, entries, selected, sequence, length,
                           energies, total)


def is_induced_path(g, vertices):
    """True iff the vertex sequence is a chord-free path in g.

    Empty and single-vertex sequences are trivially paths.
    """
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < g.num_vertices:
            raise ValidationError("vertex %r out of range" % (v,))
    if len(set(vs)) != len(vs):
        return False
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if g.is_edge(vs[a], vs[b]) != (b == a + 1):
                return False
    return True


def is_induced_cycle(g, vertices):
    """True iff the sequence is a chord-free cycle of at least 3 vertices."""
    vs = list(vertices)
    for v in vs:
        if not 0 <= v < g.num_vertices:
            raise ValidationError("vertex %r out of range" % (v,))
    if len(vs) < 3 or len(set(vs)) != len(vs):
        return False
    k = len(vs)
    for a in range(k):
        for b in range(a + 1, k):
            consecutive = (b == a + 1) or (a == 0 and b == k - 1)
            if g.is_edge(vs[a], vs[b]) != consecutive:
                return False
    return True


def _sequence_violation(g, vs, labels, cyclic):
    seen = {}
    for pos, v in enumerate(vs):
        if v in seen:
            return "vertex %s repeats at positions %d and %d" % (labels[pos], seen[v], pos)
        seen[v] = pos
    k = len(vs)
    if cyclic and k < 3:
        return "a cycle needs at least 3 vertices, got %d" % k
    for a in range(k):
        for b in range(a + 1, k):
            consecutive = (b == a + 1) or (cyclic and a == 0 and b == k - 1)
            adjacent = g.is_edge(vs[a], vs[b])
            if consecutive and not adjacent:
                return "consecutive vertices %s and %s are not adjacent" % (labels[a], labels[b])
            if not consecutive and adjacent:
                return "chord between %s and %s" % (labels[a], labels[b])
    return None


def verify_sequence(kind, n, labels):
    """Check a printed hypercube sequence as a snake (path) or coil (cycle).

    labels are n-bit strings, most significant bit first. Returns a report
    dict; 'length' counts edges for snakes and vertices for coils.
    """
    if kind not in ("snake", "coil"):
        raise ValidationError("kind must be 'snake' or 'coil', got %r" % (kind,))
    g = hypercube_graph(n)
    labels = [str(lab) for lab in labels]
    vs = []
    for lab in labels:
        if len(lab) != n or set(lab) - {"0", "1"}:
            raise ValidationError("label %r is not an %d-bit string" % (lab, n))
        vs.append(int(lab, 2))
    reason = _sequence_violation(g, vs, labels, cyclic=(kind == "coil"))
    length = len(vs) if kind == "coil" else max(len(vs) - 1, 0)
    return {
        "valid": reason is None,
        "reason": reason,
        "kind": kind,
        "n": n,
        "length": length if reason is None else 0,
        "sequence": labels,
        "term_energies": None,
        "total_energy": None,
    }


def solution_report(inst, decoded):
    """Report dict for a decoded assignment, same shape as verify_sequence."""
    return {
        "valid": decoded.valid,
        "reason": decoded.reason,
        "kind": inst.kind,
        "n": inst.n,
        "length": decoded.length,
        "sequence": decoded.sequence,
        "term_energies": dict(decoded.term_energies),
        "total_energy": decoded.total_energy,
    }
