from math import gcd

import pytest

from kunum.birgraph import (
    RULE_SAME_SUM,
    RULE_SHIFT,
    RULE_SPECIAL,
    build_graph,
    build_graph_oracle,
    check_connected,
    chi_self,
    equivalence_path,
    graph_to_dot,
    in_node_set,
    prime_witness,
)
from kunum.errors import BoundTooSmall, ExcludedSum


def test_node_set_predicate():
    assert in_node_set(5, 1)
    assert in_node_set(5, 4)
    assert not in_node_set(4, 2)  # not coprime
    assert not in_node_set(3, 2)  # sum below 6
    assert not in_node_set(3, 4)  # needs a > b


def test_build_graph_small_levels():
    g6 = build_graph(6)
    assert g6.nodes == ((5, 1),)
    assert g6.edges == ()
    g7 = build_graph(7)
    assert set(g7.nodes) == {(5, 1), (4, 3), (5, 2), (6, 1)}
    same_sum = {(x, y) for x, y, r in g7.edges if r == RULE_SAME_SUM}
    assert same_sum == {((4, 3), (5, 2)), ((4, 3), (6, 1)), ((5, 2), (6, 1))}


def test_special_edge_appears_at_nine():
    g9 = build_graph(9)
    assert ((5, 4), (7, 1), RULE_SPECIAL) in g9.edges
    assert not any(r == RULE_SPECIAL for *_, r in build_graph(8).edges)


def test_build_graph_rejects_small_bound():
    with pytest.raises(BoundTooSmall):
        build_graph(5)


def test_shift_edges_stay_in_node_set():
    g = build_graph(80)
    node_set = set(g.nodes)
    for x, y, rule in g.edges:
        assert x in node_set and y in node_set
        if rule == RULE_SHIFT:
            lo, hi = (x, y) if x[1] > y[1] else (y, x)
            assert (hi[0], hi[1]) == (lo[0] + 1, lo[1] - 2)


def test_connected_examples():
    assert check_connected(6)[0]
    ok, _ = check_connected(9)
    assert ok
    ok, tree = check_connected(200)
    assert ok
    assert len(tree) == len(build_graph(200).nodes) - 1


def test_spanning_tree_edges_satisfy_rules():
    _, tree = build_graph(50), None
    ok, tree = check_connected(50)
    assert ok
    for x, y, rule in tree:
        if rule == RULE_SAME_SUM:
            assert x[0] + x[1] == y[0] + y[1]
        elif rule == RULE_SHIFT:
            lo, hi = (x, y) if x[1] > y[1] else (y, x)
            assert (hi[0], hi[1]) == (lo[0] + 1, lo[1] - 2)
        else:
            assert {x, y} == {(5, 4), (7, 1)}


def test_prime_witness_examples():
    assert prime_witness(6) == ((4, 3), (5, 1))
    assert prime_witness(9) == ((7, 3), (8, 1))
    with pytest.raises(ExcludedSum):
        prime_witness(8)
    with pytest.raises(ExcludedSum):
        prime_witness(5)


def test_prime_witness_range():
    for m in range(6, 501):
        if m == 8:
            continue
        upper, lower = prime_witness(m)
        assert upper[0] + upper[1] == m + 1
        assert lower[0] + lower[1] == m
        assert in_node_set(*upper) and in_node_set(*lower)
        assert lower == (upper[0] + 1, upper[1] - 2)


def test_equivalence_paths():
    assert equivalence_path((5, 1), (5, 1), 9) == []
    path = equivalence_path((7, 2), (7, 1), 9)
    assert [r for *_, r in path] == [RULE_SAME_SUM, RULE_SPECIAL]
    path2 = equivalence_path((11, 2), (5, 1), 20)
    assert path2[0][0] != path2[-1][1] or len(path2) > 0


def test_oracle_agreement():
    for bound in (9, 42, 100):
        built = build_graph(bound)
        regen = build_graph_oracle(bound)
        assert built.nodes == regen.nodes
        assert built.edges == regen.edges


def test_chi_threshold_equivalence():
    # a + b >= 6 exactly characterizes self-pairing below -22 on coprime a > b
    for b in range(1, 200):
        for a in range(b + 1, 201 - b):
            if gcd(a, b) != 1:
                continue
            assert (chi_self((a, b)) < -22) == (a + b >= 6), (a, b)


def test_dot_output():
    dot = graph_to_dot(build_graph(9))
    assert '"n5_4" -- "n7_1" [penwidth=3];' in dot
    assert "style=dashed" in dot
    assert dot.startswith("graph stable_birationality {")
