import math

import pytest

from conftest import cycle, path
from treepart import construct as construct_mod
from treepart.construct import AnchorCall, ConstructStats, anchored_construct, construct_tree_partition
from treepart.decomp import SeparatorResult, TreeDecomposition, clique_tree_from_peo, treewidth_heuristic
from treepart.errors import ContractError, InputError
from treepart.generators import gen_lower_general, random_ktree, random_tree
from treepart.graph import Graph, is_chordal, max_degree
from treepart.partition import exact_tpw, verify_tree_partition
from treepart.quadnum import anchor_bag_limit, anchor_min, lemma3_width_bound


def build(g, delta=None, trace=None, stats=None):
    td = treewidth_heuristic(g)
    return construct_tree_partition(g, td, delta or max(max_degree(g), 1), trace=trace, stats=stats)


def test_case1_single_bag():
    g = path(4)  # 4 < (gamma+1)*2 ~ 6.83
    tp = build(g)
    assert len(tp) == 1 and tp.width == 4


def test_p9_golden():
    tp = build(path(9))
    assert verify_tree_partition(path(9), tp)
    assert tp.width <= 66
    assert tp.width == 7


def test_lower_general_sandwich():
    g, _ = gen_lower_general(2, 7, 3)
    td = clique_tree_from_peo(g, is_chordal(g).peo)
    assert td.width == 3
    tp = construct_tree_partition(g, td, 7)
    assert verify_tree_partition(g, tp)
    assert exact_tpw(g).width <= tp.width <= 480


@pytest.mark.parametrize("seed", range(50))
def test_instrumented_random_2trees(seed):
    n = 20 + seed % 41
    g = random_ktree(n, 2, seed, max_degree=8)
    records = []
    stats = ConstructStats()
    td = treewidth_heuristic(g)
    k = td.width
    delta = max_degree(g)
    tp = construct_tree_partition(g, td, delta, trace=records.append, stats=stats)
    assert verify_tree_partition(g, tp)
    assert tp.width <= math.ceil(lemma3_width_bound(k, delta))
    for rec in records:
        if rec["S"]:
            assert rec["anchor_bag"] <= anchor_bag_limit(rec["S"], k)
            assert anchor_min(k) <= rec["S"]
    assert stats.nodes == len([r for r in records if r["S"]])


def test_case4_reached_on_large_trees():
    seen = 0
    for seed in range(5):
        g = random_tree(300, seed)
        stats = ConstructStats()
        tp = build(g, stats=stats)
        assert verify_tree_partition(g, tp)
        assert tp.width <= 66 or max_degree(g) > 2
        seen += stats.cases[4]
    assert seen > 0


def test_recursion_shrinks_vertex_count():
    g = random_ktree(300, 2, 5, max_degree=8)
    records = []
    build(g, trace=records.append)
    # records are emitted post-order; each child's V is below its parent's V
    stack = []
    for rec in records:
        while stack and stack[-1]["depth"] > rec["depth"]:
            child = stack.pop()
            assert child["V"] < rec["V"]
        stack.append(rec)


def test_disconnected_graph():
    g = Graph(20, [(i, i + 1) for i in range(9)] + [(10 + i, 10 + (i + 1) % 10) for i in range(10)]
              + [])
    tp = build(g)
    assert verify_tree_partition(g, tp)


def test_rejects_bad_inputs():
    g = cycle(6)
    td = treewidth_heuristic(g)
    with pytest.raises(InputError):
        construct_tree_partition(g, td, 1)
    with pytest.raises(InputError):
        construct_tree_partition(g, TreeDecomposition([{0, 1}]), 2)


def test_anchored_construct_keeps_anchor():
    g = random_ktree(40, 2, 11, max_degree=8)
    td = treewidth_heuristic(g)
    s = frozenset(range(10, 22))
    res = anchored_construct(AnchorCall(g, td, s, td.width, max_degree(g)))
    assert verify_tree_partition(g, res.partition)
    bag = res.partition.bags[res.anchor_bag]
    assert s <= bag
    assert len(bag) <= anchor_bag_limit(len(s), td.width)


def test_anchor_outside_window():
    g = random_ktree(40, 2, 11, max_degree=8)
    td = treewidth_heuristic(g)
    with pytest.raises(ContractError):
        anchored_construct(AnchorCall(g, td, frozenset({0, 1}), td.width, max_degree(g)))


def test_unbalanced_separator_is_caught(monkeypatch):
    real = construct_mod.separate

    def lopsided(adj, verts, bags, tree_edges, s):
        res = real(adj, verts, bags, tree_edges, s)
        everything = frozenset(verts)
        sides = {e: 1 for e in res.edge_side}
        return SeparatorResult(res.y, everything, frozenset(res.y), sides)

    monkeypatch.setattr(construct_mod, "separate", lopsided)
    g = random_tree(300, 0)
    with pytest.raises(ContractError):
        build(g)


def test_deterministic():
    g = random_ktree(60, 3, 2, max_degree=12)
    assert build(g) == build(g)
