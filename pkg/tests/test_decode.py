import random

import pytest

from snakebox import (ValidationError, build_citb, build_induced_subgraph,
                      build_longest_induced_cycle, build_longest_induced_path,
                      build_mcis, build_sitb, cycle_graph, decode,
                      hypercube_graph, is_induced_cycle, is_induced_path,
                      path_graph, solution_report, verify_sequence)
from snakebox.decode import _mapping_violation
from snakebox.formulations import term_names
from helpers import (consistent_random_assignment, encode_cycle_assignment,
                     encode_path_assignment, random_bits)

SNAKE_5_A = ["10100", "00100", "00101", "01101", "01111", "11111",
                  "10111", "10011", "00011", "00010", "01010", "11010",
                  "11000", "11001"]
SNAKE_5_B = ["11001", "10001", "10000", "10100", "00100", "01100",
                     "01000", "01010", "01011", "00011", "00111", "10111",
                     "11111", "11110"]
SNAKE_3 = ["010", "000", "100", "101", "111"]
COIL_5_A = ["00101", "00111", "10111", "11111", "11101", "11100",
                 "10100", "10000", "10010", "11010", "01010", "01011",
                 "01001", "00001"]
COIL_5_B = ["10111", "10110", "00110", "00100", "01100", "01000",
                    "11000", "10000", "10001", "00001", "00011", "01011",
                    "11011", "11111"]
COIL_2 = ["11", "01", "00", "10"]


def test_decode_snake_solution():
    q, inst = build_sitb(3)
    bits = encode_path_assignment(inst, [2, 0, 4, 5, 7])
    d = decode(inst, bits)
    assert d.valid and d.reason is None
    assert d.length == 4
    assert d.sequence == SNAKE_3
    assert d.selected == [0, 1, 2, 3, 4]
    assert d.term_energies == {"matching": 0, "structure": 0, "objective": -5,
                               "connectivity": 1}
    # gamma=1, delta=9 for n=3 hosts
    assert d.total_energy == -5 + 9 == q.energy(bits)


def test_decode_all_zero_path_assignment():
    q, inst = build_sitb(2)
    bits = [0] * inst.layout.num_vars
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "empty selection"
    assert d.length == 0 and d.sequence == []
    # the anchor term still charges delta for deselecting everything
    assert d.term_energies == {"matching": 0, "structure": 0, "objective": 0,
                               "connectivity": 1}
    assert d.total_energy == inst.weights.delta == q.energy(bits)


def test_decode_coil_solution():
    q, inst = build_citb(2)
    bits = encode_cycle_assignment(inst, [0, 1, 3], 2)
    d = decode(inst, bits)
    assert d.valid
    assert d.length == 4
    assert d.sequence == ["00", "01", "11", "10"]
    assert d.term_energies == {"matching": 0, "structure": 0, "objective": -4,
                               "connectivity": 0, "succession": 0}
    assert d.total_energy == -4 == q.energy(bits)


def test_decode_rejects_row_with_two_targets():
    _, inst = build_sitb(2)
    lay = inst.layout
    bits = [0] * lay.num_vars
    bits[lay.x(0, 0)] = bits[lay.x(0, 1)] = 1
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "pattern vertex 0 mapped to multiple targets"


def test_decode_rejects_target_reuse():
    _, inst = build_sitb(2)
    lay = inst.layout
    bits = [0] * lay.num_vars
    bits[lay.x(0, 0)] = bits[lay.x(1, 0)] = 1
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "target vertex 0 assigned to pattern vertices 0 and 1"


def test_decode_rejects_chord():
    # path 0-1-2-3 onto the 4-cycle 00,01,11,10: endpoints touch
    _, inst = build_sitb(2)
    bits = encode_path_assignment(inst, [0, 1, 3, 2])
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "pattern non-edge (0,3) lands on adjacent targets (0,2)"
    assert d.term_energies["structure"] == 1


def test_decode_rejects_broken_pattern_edge():
    _, inst = build_sitb(2)
    lay = inst.layout
    bits = [0] * lay.num_vars
    for u, t in ((0, 0), (1, 3)):  # rows 0,1 adjacent; 00 and 11 are not
        bits[lay.x(u, t)] = bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "pattern edge (0,1) lands on non-adjacent targets (0,3)"


def test_decode_rejects_non_prefix_selection():
    _, inst = build_sitb(2)
    lay = inst.layout
    for rows in ([0, 2], [1]):
        bits = [0] * lay.num_vars
        targets = {0: 0, 1: 3, 2: 3}
        for u in rows:
            t = targets[u]
            bits[lay.x(u, t)] = bits[lay.p(u)] = 1
            bits[lay.s(t)] = 1
        d = decode(inst, bits)
        assert not d.valid
        assert d.reason == "selected vertices do not form an anchored contiguous prefix"


def test_decode_rejects_degenerate_cycle_shapes():
    _, inst = build_citb(2)
    lay = inst.layout
    # closing vertex alone
    bits = [0] * lay.num_vars
    bits[lay.x(3, 0)] = bits[lay.p(3)] = bits[lay.s(0)] = 1
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "selection is not a backbone prefix closed by its cycle vertex"
    # backbone prefix with no closing vertex
    bits = [0] * lay.num_vars
    for u, t in ((0, 0), (1, 1), (2, 3)):
        bits[lay.x(u, t)] = bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    d = decode(inst, bits)
    assert not d.valid and d.reason.startswith("selection is not a backbone")


def test_decode_rejects_wrong_closing_vertex():
    _, inst = build_citb(3)
    host = inst.host
    lay = inst.layout
    # three backbone vertices closed by the m=4 closing vertex; targets are
    # chosen so that only the shape check can complain
    bits = [0] * lay.num_vars
    for idx, t in enumerate([0, 1, 3]):
        u = host.path_vertices[idx]
        bits[lay.x(u, t)] = bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    wrong = host.cycle_vertex_for(4)
    bits[lay.x(wrong, 4)] = bits[lay.p(wrong)] = 1
    bits[lay.s(4)] = 1
    d = decode(inst, bits)
    assert not d.valid
    assert d.reason == "selection is not a backbone prefix closed by its cycle vertex"


def test_decode_mapping_kinds():
    q, inst = build_induced_subgraph(path_graph(2), path_graph(3))
    lay = inst.layout
    bits = [0] * lay.num_vars
    for u, t in ((0, 0), (1, 1)):
        bits[lay.x(u, t)] = 1
        bits[lay.s(t)] = 1
    d = decode(inst, bits)
    assert d.valid and d.length == 2 and d.mapping == [(0, 0), (1, 1)]
    assert d.total_energy == 0 == q.energy(bits)

    bits[lay.x(1, 1)] = 0
    bits[lay.s(1)] = 0
    d = decode(inst, bits)
    assert not d.valid and d.reason == "pattern vertex 1 is unmapped"

    q, inst = build_mcis(path_graph(2), path_graph(3))
    lay = inst.layout
    bits = [0] * lay.num_vars
    d = decode(inst, bits)  # the empty map is a common subgraph
    assert d.valid and d.length == 0 and d.sequence == []
    assert d.total_energy == 0 == q.energy(bits)

    for u, t in ((0, 2), (1, 1)):
        bits[lay.x(u, t)] = bits[lay.p(u)] = 1
        bits[lay.s(t)] = 1
    d = decode(inst, bits)
    assert d.valid and d.length == 2
    assert d.total_energy == -2 * inst.weights.gamma == q.energy(bits)


def test_decode_general_path_and_cycle():
    g = cycle_graph(5)
    q, inst = build_longest_induced_path(g)
    bits = encode_path_assignment(inst, [1, 2, 3, 4])
    d = decode(inst, bits)
    assert d.valid and d.length == 3 and d.sequence == ["1", "2", "3", "4"]
    assert d.total_energy == q.energy(bits)

    g = cycle_graph(4)
    q, inst = build_longest_induced_cycle(g)
    bits = encode_cycle_assignment(inst, [2, 3, 0], 1)
    d = decode(inst, bits)
    assert d.valid and d.length == 4 and d.sequence == ["2", "3", "0", "1"]
    assert d.term_energies["objective"] == -4
    assert d.total_energy == -4 * inst.weights.gamma == q.energy(bits)


def test_decode_bit_vector_validation():
    _, inst = build_sitb(2)
    with pytest.raises(ValidationError):
        decode(inst, [0] * (inst.layout.num_vars - 1))
    bad = [0] * inst.layout.num_vars
    bad[0] = 2
    with pytest.raises(ValidationError):
        decode(inst, bad)


def _small_instances():
    yield build_sitb(2)
    yield build_citb(2)
    yield build_induced_subgraph(path_graph(2), path_graph(3))
    yield build_mcis(path_graph(3), cycle_graph(4))
    yield build_longest_induced_path(cycle_graph(5))
    yield build_longest_induced_cycle(cycle_graph(4))


def test_weighted_terms_reproduce_qubo_energy():
    rng = random.Random(5150)
    for q, inst in _small_instances():
        for _ in range(200):
            bits = random_bits(rng, inst.layout.num_vars)
            d = decode(inst, bits)
            assert d.total_energy == q.energy(bits)
            assert set(d.term_energies) == set(term_names(inst.kind))


def test_zero_penalties_imply_clean_mapping():
    rng = random.Random(99)
    for _, inst in _small_instances():
        hits = 0
        pool = [random_bits(rng, inst.layout.num_vars) for _ in range(150)]
        pool += [consistent_random_assignment(rng, inst) for _ in range(150)]
        for bits in pool:
            d = decode(inst, bits)
            if d.term_energies["matching"] == 0 and d.term_energies["structure"] == 0:
                hits += 1
                row = [0] * inst.layout.v1_size
                for u, _t in d.mapping:
                    row[u] += 1
                assert _mapping_violation(inst, d.mapping, row) is None
        assert hits  # the property must not hold vacuously


def test_is_induced_path():
    q2 = hypercube_graph(2)
    assert is_induced_path(q2, [0, 1, 3])
    assert not is_induced_path(q2, [0, 1, 3, 2])  # wrap edge is a chord
    assert is_induced_path(q2, [])
    assert is_induced_path(q2, [2])
    assert not is_induced_path(q2, [0, 3])  # not adjacent
    assert not is_induced_path(q2, [0, 1, 0])
    with pytest.raises(ValidationError):
        is_induced_path(q2, [4])


def test_is_induced_cycle():
    q2 = hypercube_graph(2)
    assert is_induced_cycle(q2, [0, 1, 3, 2])
    assert not is_induced_cycle(q2, [0, 1, 3])  # 0-3 missing
    assert not is_induced_cycle(q2, [0, 1])
    assert is_induced_cycle(cycle_graph(3), [0, 1, 2])
    assert not is_induced_cycle(cycle_graph(5), [0, 1, 2, 3])
    with pytest.raises(ValidationError):
        is_induced_cycle(q2, [0, 1, 9])


@pytest.mark.parametrize("kind,n,labels,length", [
    ("snake", 5, SNAKE_5_A, 13),
    ("snake", 5, SNAKE_5_B, 13),
    ("snake", 3, SNAKE_3, 4),
    ("coil", 5, COIL_5_A, 14),
    ("coil", 5, COIL_5_B, 14),
    ("coil", 2, COIL_2, 4),
])
def test_verify_sequence_accepts_published_walks(kind, n, labels, length):
    report = verify_sequence(kind, n, labels)
    assert report["valid"] and report["reason"] is None
    assert report["length"] == length
    assert report["kind"] == kind and report["n"] == n
    assert report["sequence"] == labels


def test_verify_sequence_snake_is_not_a_coil():
    report = verify_sequence("coil", 5, SNAKE_5_A)
    assert not report["valid"]
    assert report["reason"] == "consecutive vertices 10100 and 11001 are not adjacent"
    assert report["length"] == 0


def test_verify_sequence_reasons():
    r = verify_sequence("snake", 3, ["000", "001", "000"])
    assert r["reason"] == "vertex 000 repeats at positions 0 and 2"
    r = verify_sequence("snake", 2, ["00", "01", "11", "10"])
    assert r["reason"] == "chord between 00 and 10"
    r = verify_sequence("snake", 2, ["00", "11"])
    assert r["reason"] == "consecutive vertices 00 and 11 are not adjacent"
    r = verify_sequence("coil", 2, ["00", "01"])
    assert r["reason"] == "a cycle needs at least 3 vertices, got 2"


def test_verify_sequence_input_validation():
    with pytest.raises(ValidationError):
        verify_sequence("ring", 2, ["00"])
    with pytest.raises(ValidationError):
        verify_sequence("snake", 2, ["0a"])
    with pytest.raises(ValidationError):
        verify_sequence("snake", 5, ["0101"])


def test_solution_report_matches_sequence_report_shape():
    _, inst = build_sitb(2)
    d = decode(inst, encode_path_assignment(inst, [0, 1, 3]))
    rep = solution_report(inst, d)
    seq_rep = verify_sequence("snake", 2, ["00", "01", "11"])
    assert set(rep) == set(seq_rep)
    assert rep["valid"] and rep["length"] == 2 and rep["n"] == 2
    assert rep["kind"] == "sitb"
    assert rep["total_energy"] == d.total_energy
