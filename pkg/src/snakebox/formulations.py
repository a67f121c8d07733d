"""QUBO builders for induced-subgraph style problems.

Every formulation maps a pattern graph G1 into a target graph G2 through
binary assignment variables x[u,i] ("pattern vertex u sits on target vertex
i"), plus selection indicators p[u] and target-occupancy indicators s[i].
The energy is a weighted sum of penalty families:

  matching     rows: every selected pattern vertex sits on exactly one
               target; columns: s[i] counts the occupancy of target i, which
               forbids two pattern vertices on one target at zero energy.
  structure    a pattern edge may not land on a non-adjacent target pair and
               a pattern non-edge may not land on an adjacent pair, so any
               zero-energy mapping is an induced-subgraph embedding.
  objective    -gamma per selected pattern vertex, rewarding larger maps.
  connectivity for path search: the anchor (first path vertex) must be
               selected and selection may not change across a path edge
               unless the tail is selected, forcing an anchored contiguous
               prefix. For cycle search: exactly one closing vertex of the
               host pattern is selected.
  succession   cycle search only: each selected backbone vertex must be
               followed by a selected out-neighbor, which propagates the
               selection around the host's directed cycle.

Snake-in-the-box (longest induced path in the hypercube Q_n) uses the path
pattern P_{2^n}; coil-in-the-box (longest induced cycle) uses the dedicated
cycle-search host. Both generalize to arbitrary target graphs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .graphs import Graph, CitbHostGraph, cycle_search_host, hypercube_graph, path_graph
from .qubo import Qubo

KIND_INDUCED_SUBGRAPH = "induced_subgraph"
KIND_MCIS = "mcis"
KIND_SITB = "sitb"
KIND_CITB = "citb"
KIND_LONGEST_PATH = "longest_induced_path"
KIND_LONGEST_CYCLE = "longest_induced_cycle"

ALL_KINDS = (KIND_INDUCED_SUBGRAPH, KIND_MCIS, KIND_SITB, KIND_CITB,
             KIND_LONGEST_PATH, KIND_LONGEST_CYCLE)

_PATH_KINDS = (KIND_SITB, KIND_LONGEST_PATH)
_CYCLE_KINDS = (KIND_CITB, KIND_LONGEST_CYCLE)

TERM_MATCHING = "matching"
TERM_STRUCTURE = "structure"
TERM_OBJECTIVE = "objective"
TERM_CONNECTIVITY = "connectivity"
TERM_SUCCESSION = "succession"

# Which weight scales which term.
TERM_WEIGHT_ATTR = {
    TERM_MATCHING: "alpha",
    TERM_STRUCTURE: "beta",
    TERM_OBJECTIVE: "gamma",
    TERM_CONNECTIVITY: "delta",
    TERM_SUCCESSION: "epsilon",
}

# Desk-scale guards for the hypercube builders; override with force=True.
SITB_GUARD_MAX_N = 5
CITB_GUARD_MAX_N = 5


def term_names(kind):
    """Penalty families present in a formulation, in build order."""
    if kind == KIND_INDUCED_SUBGRAPH:
        return (TERM_MATCHING, TERM_STRUCTURE)
    if kind == KIND_MCIS:
        return (TERM_MATCHING, TERM_STRUCTURE, TERM_OBJECTIVE)
    if kind in _PATH_KINDS:
        return (TERM_MATCHING, TERM_STRUCTURE, TERM_OBJECTIVE, TERM_CONNECTIVITY)
    if kind in _CYCLE_KINDS:
        return (TERM_MATCHING, TERM_STRUCTURE, TERM_OBJECTIVE, TERM_CONNECTIVITY,
                TERM_SUCCESSION)
    raise ValidationError("unknown problem kind %r" % (kind,))


def _is_positive_int(x):
    return isinstance(x, int) and not isinstance(x, bool) and x > 0


@dataclass(frozen=True)
class PenaltyWeights:
    """Positive integer weights (alpha, beta, gamma, delta, epsilon).

    Unused entries for a given problem kind must stay None: alpha and beta
    are always required, gamma appears once there is a size objective, delta
    with a connectivity term, epsilon with a succession term.
    """

    alpha: int
    beta: int
    gamma: int | None = None
    delta: int | None = None
    epsilon: int | None = None

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "epsilon"):
            value = getattr(self, name)
            if value is not None and not _is_positive_int(value):
                raise ValidationError("%s must be a positive integer, got %r" % (name, value))
        if not _is_positive_int(self.alpha) or not _is_positive_int(self.beta):
            raise ValidationError("alpha and beta are required positive integers")

    def value_of(self, term):
        return getattr(self, TERM_WEIGHT_ATTR[term])

    def to_json_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma,
                "delta": self.delta, "epsilon": self.epsilon}

    @classmethod
    def from_json_dict(cls, d):
        try:
            return cls(alpha=d["alpha"], beta=d["beta"], gamma=d.get("gamma"),
                       delta=d.get("delta"), epsilon=d.get("epsilon"))
        except (KeyError, TypeError) as exc:
            raise ValidationError("weights JSON needs alpha and beta") from exc


@dataclass(frozen=True)
class VariableLayout:
    """Index layout: x block row-major by pattern vertex, then p, then s."""

    v1_size: int
    v2_size: int
    has_p: bool = True

    def __post_init__(self):
        if self.v1_size < 1 or self.v2_size < 1:
            raise ValidationError("layout needs at least one vertex on each side")

    def x(self, u, i):
        """Variable index of x[u, i]; u and i are assumed in range."""
        return u * self.v2_size + i

    def p(self, u):
        """Variable index of the selection indicator p[u]."""
        if not self.has_p:
            raise ValidationError("this layout has no selection indicators")
        return self.v1_size * self.v2_size + u

    def s(self, i):
        """Variable index of the occupancy indicator s[i]."""
        base = self.v1_size * self.v2_size
        if self.has_p:
            base += self.v1_size
        return base + i

    @property
    def num_vars(self):
        n = self.v1_size * self.v2_size + self.v2_size
        if self.has_p:
            n += self.v1_size
        return n


@dataclass(frozen=True)
class ProblemInstance:
    """Everything needed to decode and re-check a built formulation."""

    kind: str
    g1: Graph
    g2: Graph
    layout: VariableLayout
    weights: PenaltyWeights
    n: int | None = None
    anchor: int | None = None
    host: CitbHostGraph | None = None

    def meta(self):
        """The meta block written next to the QUBO terms on export."""
        return {
            "problem": self.kind,
            "n": self.n,
            "v1_size": self.layout.v1_size,
            "v2_size": self.layout.v2_size,
            "weights": self.weights.to_json_dict(),
            "anchor": self.anchor,
        }


def default_weights(kind, v2_size):
    """Smallest convenient weights satisfying the strict inequalities.

    gamma is 1. Path search: delta = v2_size + 1, alpha = beta =
    gamma + 2*delta + 1. Cycle search: delta = epsilon = v2_size + 1,
    alpha = beta = gamma + delta + epsilon + 1. MCIS: alpha = beta = 2.
    """
    if not _is_positive_int(v2_size):
        raise ValidationError("v2_size must be a positive integer, got %r" % (v2_size,))
    if kind == KIND_INDUCED_SUBGRAPH:
        return PenaltyWeights(alpha=1, beta=1)
    if kind == KIND_MCIS:
        return PenaltyWeights(alpha=2, beta=2, gamma=1)
    if kind in _PATH_KINDS:
        gamma = 1
        delta = v2_size + 1
        bound = gamma + 2 * delta
        return PenaltyWeights(alpha=bound + 1, beta=bound + 1, gamma=gamma, delta=delta)
    if kind in _CYCLE_KINDS:
        gamma = 1
        delta = v2_size + 1
        bound = gamma + 2 * delta
        return PenaltyWeights(alpha=bound + 1, beta=bound + 1, gamma=gamma,
                              delta=delta, epsilon=delta)
    raise ValidationError("unknown problem kind %r" % (kind,))


def validate_weights(kind, weights, v2_size):
    """Check the strict penalty inequalities for the given kind.

    Raises ValidationError naming the violated inequality. The bounds keep
    every penalty family dominant over the size reward it protects: breaking
    a constraint must never pay for itself.
    """
    if kind not in ALL_KINDS:
        raise ValidationError("unknown problem kind %r" % (kind,))
    if not isinstance(weights, PenaltyWeights):
        raise ValidationError("weights must be a PenaltyWeights instance")
    names = term_names(kind)
    for term, attr in TERM_WEIGHT_ATTR.items():
        value = getattr(weights, attr)
        if term in names and value is None:
            raise ValidationError("%s is required for %s" % (attr, kind))
        if term not in names and value is not None:
            raise ValidationError("%s is not used by %s and must be None" % (attr, kind))
    a, b, g, d, e = (weights.alpha, weights.beta, weights.gamma,
                     weights.delta, weights.epsilon)
    if kind == KIND_MCIS:
        if a <= g:
            raise ValidationError("alpha > gamma required: alpha=%d, gamma=%d" % (a, g))
        if b <= g:
            raise ValidationError("beta > gamma required: beta=%d, gamma=%d" % (b, g))
    elif kind in _PATH_KINDS:
        if d <= v2_size * g:
            raise ValidationError(
                "delta > |V2|*gamma required: delta=%d, |V2|*gamma=%d" % (d, v2_size * g))
        if a <= g + 2 * d:
            raise ValidationError(
                "alpha > gamma + 2*delta required: alpha=%d, gamma + 2*delta=%d"
                % (a, g + 2 * d))
        if b <= g + 2 * d:
            raise ValidationError(
                "beta > gamma + 2*delta required: beta=%d, gamma + 2*delta=%d"
                % (b, g + 2 * d))
    elif kind in _CYCLE_KINDS:
        if d <= v2_size * g:
            raise ValidationError(
                "delta > |V2|*gamma required: delta=%d, |V2|*gamma=%d" % (d, v2_size * g))
        if e <= v2_size * g:
            raise ValidationError(
                "epsilon > |V2|*gamma required: epsilon=%d, |V2|*gamma=%d" % (e, v2_size * g))
        if a <= g + d + e:
            raise ValidationError(
                "alpha > gamma + delta + epsilon required: alpha=%d, bound=%d"
                % (a, g + d + e))
        if b <= g + d + e:
            raise ValidationError(
                "beta > gamma + delta + epsilon required: beta=%d, bound=%d"
                % (b, g + d + e))


# term emitters ------------------------------------------------------------

def _add_matching(q, lay, alpha):
    for u in range(lay.v1_size):
        coeffs = {lay.x(u, i): -1 for i in range(lay.v2_size)}
        if lay.has_p:
            coeffs[lay.p(u)] = 1
            q.add_square(0, coeffs, alpha)
        else:
            q.add_square(1, coeffs, alpha)
    for i in range(lay.v2_size):
        coeffs = {lay.x(u, i): -1 for u in range(lay.v1_size)}
        coeffs[lay.s(i)] = 1
        q.add_square(0, coeffs, alpha)


def _add_structure(q, lay, beta, g1, g2):
    v1, v2 = lay.v1_size, lay.v2_size
    adj1, adj2 = g1.adjacency, g2.adjacency
    # pattern edge on a non-adjacent (or equal) target pair
    for u, v in g1.edges:
        for i in range(v2):
            row = adj2[i]
            for j in range(v2):
                if i != j and not (row >> j & 1):
                    q.add_term(lay.x(u, i), lay.x(v, j), beta)
    # pattern non-edge on an adjacent target pair
    oriented = [(i, j) for i, j in g2.edges] + [(j, i) for i, j in g2.edges]
    for u in range(v1):
        adj_u = adj1[u]
        for v in range(u + 1, v1):
            if not (adj_u >> v & 1):
                for i, j in oriented:
                    q.add_term(lay.x(u, i), lay.x(v, j), beta)


def _add_objective(q, lay, gamma):
    for u in range(lay.v1_size):
        q.add_linear(lay.p(u), -gamma)


def _add_path_connectivity(q, lay, delta, g1, anchor):
    q.add_square(1, {lay.p(anchor): -1}, delta)
    for u, v in g1.edges:
        q.add_square(0, {lay.p(u): 1, lay.p(v): -1}, delta)


def _add_cycle_connectivity(q, lay, delta, host):
    q.add_square(1, {lay.p(c): -1 for c in host.cycle_vertices}, delta)


def _add_succession(q, lay, epsilon, host):
    for idx, pv in enumerate(host.path_vertices):
        coeffs = {lay.p(s): -1 for s in host.successors[idx]}
        coeffs[lay.p(pv)] = 1
        q.add_square(0, coeffs, epsilon)


def build_qubo(instance):
    """Emit the QUBO for an instance (deterministic, integer coefficients)."""
    kind, lay, w = instance.kind, instance.layout, instance.weights
    names = term_names(kind)
    q = Qubo(lay.num_vars)
    _add_matching(q, lay, w.alpha)
    _add_structure(q, lay, w.beta, instance.g1, instance.g2)
    if TERM_OBJECTIVE in names:
        _add_objective(q, lay, w.gamma)
    if TERM_CONNECTIVITY in names:
        if kind in _PATH_KINDS:
            _add_path_connectivity(q, lay, w.delta, instance.g1, instance.anchor)
        else:
            _add_cycle_connectivity(q, lay, w.delta, instance.host)
    if TERM_SUCCESSION in names:
        _add_succession(q, lay, w.epsilon, instance.host)
    return q


# instance constructors ----------------------------------------------------

def _require_graph(g, what):
    if not isinstance(g, Graph):
        raise ValidationError("%s must be a Graph" % what)
    if g.num_vertices < 1:
        raise ValidationError("%s must have at least one vertex" % what)


def _mapping_instance(kind, g1, g2, weights):
    _require_graph(g1, "g1")
    _require_graph(g2, "g2")
    if weights is None:
        weights = default_weights(kind, g2.num_vertices)
    validate_weights(kind, weights, g2.num_vertices)
    lay = VariableLayout(g1.num_vertices, g2.num_vertices,
                         has_p=(kind != KIND_INDUCED_SUBGRAPH))
    return ProblemInstance(kind=kind, g1=g1, g2=g2, layout=lay, weights=weights)


def _path_instance(kind, g2, weights, n=None):
    _require_graph(g2, "target graph")
    if weights is None:
        weights = default_weights(kind, g2.num_vertices)
    validate_weights(kind, weights, g2.num_vertices)
    g1 = path_graph(g2.num_vertices)
    lay = VariableLayout(g1.num_vertices, g2.num_vertices, has_p=True)
    return ProblemInstance(kind=kind, g1=g1, g2=g2, layout=lay, weights=weights,
                           n=n, anchor=0)


def _cycle_instance(kind, g2, weights, n=None):
    _require_graph(g2, "target graph")
    if g2.num_vertices < 3:
        raise ValidationError("cycle search needs a target with at least 3 vertices")
    if weights is None:
        weights = default_weights(kind, g2.num_vertices)
    validate_weights(kind, weights, g2.num_vertices)
    host = cycle_search_host(g2.num_vertices)
    lay = VariableLayout(host.graph.num_vertices, g2.num_vertices, has_p=True)
    return ProblemInstance(kind=kind, g1=host.graph, g2=g2, layout=lay,
                           weights=weights, n=n, host=host)


def build_induced_subgraph(g1, g2, weights=None):
    """Decision formulation: minimum 0 iff g1 embeds in g2 as an induced subgraph."""
    inst = _mapping_instance(KIND_INDUCED_SUBGRAPH, g1, g2, weights)
    return build_qubo(inst), inst


def build_mcis(g1, g2, weights=None):
    """Maximum common induced subgraph; minimum energy is -gamma * optimum size."""
    inst = _mapping_instance(KIND_MCIS, g1, g2, weights)
    return build_qubo(inst), inst


def build_sitb(n, weights=None, force=False):
    """Snake-in-the-box: longest induced path in Q_n anchored at path start.

    Guarded to n <= 5 unless force is set; the variable count is
    4^n + 2^(n+1).
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError("hypercube dimension must be an int >= 1, got %r" % (n,))
    if n > SITB_GUARD_MAX_N and not force:
        raise ValidationError(
            "sitb n=%d exceeds the desk-scale guard (n <= %d); pass force to override"
            % (n, SITB_GUARD_MAX_N))
    inst = _path_instance(KIND_SITB, hypercube_graph(n), weights, n=n)
    return build_qubo(inst), inst


def build_citb(n, weights=None, force=False):
    """Coil-in-the-box: longest induced cycle in Q_n (n >= 2)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValidationError("hypercube dimension must be an int >= 2, got %r" % (n,))
    if n > CITB_GUARD_MAX_N and not force:
        raise ValidationError(
            "citb n=%d exceeds the desk-scale guard (n <= %d); pass force to override"
            % (n, CITB_GUARD_MAX_N))
    inst = _cycle_instance(KIND_CITB, hypercube_graph(n), weights, n=n)
    return build_qubo(inst), inst


def build_longest_induced_path(g, weights=None):
    """Longest induced path in an arbitrary graph g."""
    inst = _path_instance(KIND_LONGEST_PATH, g, weights)
    return build_qubo(inst), inst


def build_longest_induced_cycle(g, weights=None):
    """Longest induced cycle in an arbitrary graph g (|V| >= 3)."""
    inst = _cycle_instance(KIND_LONGEST_CYCLE, g, weights)
    return build_qubo(inst), inst


def instance_from_meta(meta, graph=None, g1=None, g2=None):
    """Rebuild a ProblemInstance from an exported meta block.

    Hypercube kinds need only the meta. The generalized kinds need the
    original graph(s) back, since only sizes are recorded in the meta.
    """
    if not isinstance(meta, dict):
        raise ValidationError("meta block missing or malformed")
    try:
        kind = meta["problem"]
        weights = PenaltyWeights.from_json_dict(meta["weights"])
        v1_size = meta["v1_size"]
        v2_size = meta["v2_size"]
    except KeyError as exc:
        raise ValidationError("meta block missing field %s" % exc) from exc
    if kind in (KIND_SITB, KIND_CITB):
        n = meta.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValidationError("meta for %s needs the hypercube dimension n" % kind)
        target = hypercube_graph(n)
        inst = (_path_instance(KIND_SITB, target, weights, n=n) if kind == KIND_SITB
                else _cycle_instance(KIND_CITB, target, weights, n=n))
    elif kind in (KIND_LONGEST_PATH, KIND_LONGEST_CYCLE):
        if graph is None:
            raise ValidationError("%s needs the original target graph to decode" % kind)
        inst = (_path_instance(kind, graph, weights) if kind == KIND_LONGEST_PATH
                else _cycle_instance(kind, graph, weights))
    elif kind in (KIND_INDUCED_SUBGRAPH, KIND_MCIS):
        if g1 is None or g2 is None:
            raise ValidationError("%s needs both original graphs to decode" % kind)
        inst = _mapping_instance(kind, g1, g2, weights)
    else:
        raise ValidationError("unknown problem kind %r" % (kind,))
    if inst.layout.v1_size != v1_size or inst.layout.v2_size != v2_size:
        raise ValidationError(
            "graph sizes do not match the meta block (expected %dx%d, got %dx%d)"
            % (v1_size, v2_size, inst.layout.v1_size, inst.layout.v2_size))
    return inst
