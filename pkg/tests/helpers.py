"""Shared test helpers: hand-encode assignments for path/cycle instances."""


def encode_path_assignment(inst, targets):
    """Bits selecting pattern prefix 0..k-1 mapped onto the given targets."""
    lay = inst.layout
    bits = [0] * lay.num_vars
    for u, t in enumerate(targets):
        bits[lay.x(u, t)] = 1
        bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    return bits


def encode_cycle_assignment(inst, backbone_targets, closing_target):
    """Bits selecting backbone prefix 1..m plus (1,m), mapped onto targets."""
    lay = inst.layout
    host = inst.host
    m = len(backbone_targets)
    bits = [0] * lay.num_vars
    for idx, t in enumerate(backbone_targets):
        u = host.path_vertices[idx]
        bits[lay.x(u, t)] = 1
        bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    c = host.cycle_vertex_for(m)
    bits[lay.x(c, closing_target)] = 1
    bits[lay.p(c)] = 1
    bits[lay.s(closing_target)] = 1
    return bits


def random_bits(rng, n):
    return [rng.randint(0, 1) for _ in range(n)]


def consistent_random_assignment(rng, inst):
    """A random injective row->target map with matching p and s bits.

    The multiplicity penalties vanish by construction; the structure penalty
    is whatever the random map deserves. Instances without a p block need
    every row mapped for the multiplicity terms to vanish.
    """
    lay = inst.layout
    if lay.has_p:
        k = rng.randint(0, min(lay.v1_size, lay.v2_size))
        rows = rng.sample(range(lay.v1_size), k)
        rows.sort()
    else:
        rows = list(range(lay.v1_size))
    targets = rng.sample(range(lay.v2_size), len(rows))
    bits = [0] * lay.num_vars
    for u, t in zip(rows, targets):
        bits[lay.x(u, t)] = 1
        if lay.has_p:
            bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    return bits
