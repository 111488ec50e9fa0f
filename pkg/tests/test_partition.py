import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, cycle, path
from oracles import brute_tpw, random_tree_partition
from treepart.errors import CapacityError, InputError
from treepart.generators import random_connected, random_ktree, random_tree
from treepart.graph import Graph, connected_components, simplicial_vertices
from treepart.partition import (
    KERNELS,
    TreePartition,
    exact_tpw,
    layered_partition,
    quotient_graph,
    refine_connected,
    search_at_width,
    verify_tree_partition,
)


def test_quotient_examples():
    g = cycle(5)
    assert quotient_graph(g, list(range(5))) == g
    # a-b-c-d-a with bags {a,b} {c,d}
    assert quotient_graph(cycle(4), [{0, 1}, {2, 3}]) == Graph(2, [(0, 1)])
    assert quotient_graph(complete(5), [{0, 1, 2}, {3, 4}]) == Graph(2, [(0, 1)])
    assert quotient_graph(cycle(4), {0: 0, 1: 0, 2: 1, 3: 1}).m == 1


def test_quotient_rejects_non_partition():
    with pytest.raises(InputError):
        quotient_graph(cycle(4), [{0, 1}, {1, 2, 3}])
    with pytest.raises(InputError):
        quotient_graph(cycle(4), [{0, 1}])


def test_verify_examples():
    tree = random_tree(9, 4)
    res = verify_tree_partition(tree, list(range(9)))
    assert res and res.width == 1
    res = verify_tree_partition(cycle(4), list(range(4)))
    assert not res and res.axiom == "forest" and len(res.witness) == 4
    res = verify_tree_partition(cycle(4), [{0, 1}, {2, 3}])
    assert res and res.width == 2


def test_tree_partition_type():
    tp = TreePartition([3, 3, 7])
    assert tp.bag_of == (0, 0, 1) and tp.width == 2 and len(tp) == 2
    with pytest.raises(InputError):
        TreePartition.from_bags(3, [{0}, {0, 1, 2}])
    with pytest.raises(InputError):
        TreePartition.from_bags(3, [{0}, {1}])


def test_layered_partition_is_valid():
    for seed in range(20):
        g = random_connected(12, 0.3, seed)
        assert verify_tree_partition(g, layered_partition(g))


def test_refine_examples():
    g = path(3)
    out = refine_connected(g, [{0, 2}, {1}])
    assert out.width == 1 and len(out) == 3
    tp = TreePartition.from_bags(4, [{0, 1}, {2, 3}])
    assert refine_connected(path(4), tp) == tp
    with pytest.raises(InputError):
        refine_connected(cycle(4), list(range(4)))


def _independent_simplicial_sets(g, rng, count):
    simp = sorted(simplicial_vertices(g))
    out = [set()]
    for _ in range(count):
        order = simp[:]
        rng.shuffle(order)
        s = set()
        for v in order:
            if not (g.adj[v] & s):
                s.add(v)
        out.append(s)
    return out


def check_refinement(g, tp, rng):
    out = refine_connected(g, tp)
    assert verify_tree_partition(g, out)
    assert out.width <= tp.width
    for bag in out.bags:
        assert len(connected_components(g, bag)) == 1
    for s in _independent_simplicial_sets(g, rng, 4):
        for bag in out.bags:
            if len(bag) == 1 and bag <= s:
                continue
            rest = bag - s
            assert rest and len(connected_components(g, rest)) == 1
    return out


@pytest.mark.parametrize("seed", range(40))
def test_refine_random_chordal(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3) if seed % 4 else 1
    g = random_ktree(rng.randint(k + 1, 12), k, seed)
    tp = random_tree_partition(g, rng)
    check_refinement(g, tp, rng)


def test_refine_fixpoint():
    for seed in range(10):
        rng = random.Random(seed)
        g = random_ktree(12, 2, seed)
        once = refine_connected(g, random_tree_partition(g, rng))
        assert refine_connected(g, once) == once


@pytest.mark.parametrize("n", range(2, 9))
def test_exact_cliques(n, kernel):
    assert exact_tpw(complete(n), kernel=kernel).width == (n + 1) // 2


@pytest.mark.parametrize("n", range(2, 7))
def test_exact_cliques_brute(n):
    assert brute_tpw(complete(n)) == (n + 1) // 2


def test_exact_examples(kernel):
    assert exact_tpw(path(5), kernel=kernel).width == 1
    assert exact_tpw(cycle(4), kernel=kernel).width == 2 == brute_tpw(cycle(4))


def test_exact_rejects_disconnected():
    with pytest.raises(InputError):
        exact_tpw(Graph(3, [(0, 1)]))


def test_exact_capacity():
    with pytest.raises(CapacityError):
        exact_tpw(path(13))
    res = exact_tpw(path(13), node_budget=1000)
    assert res.complete and res.width == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_exact_vs_brute(n, p, seed):
    g = random_connected(n, p, seed)
    res = exact_tpw(g)
    assert res.complete
    assert verify_tree_partition(g, res.partition).width == res.width
    assert res.width == brute_tpw(g)


@pytest.mark.parametrize("seed", range(30))
def test_chordal_pruning_agrees(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    g = random_ktree(rng.randint(k + 1, 9), k, seed)
    plain = exact_tpw(g)
    pruned = exact_tpw(g, chordal_pruning=True)
    assert plain.width == pruned.width
    for bag in pruned.partition.bags:
        assert len(connected_components(g, bag)) == 1


@pytest.mark.skipif(len(KERNELS) < 2, reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(40))
def test_kernels_agree(seed):
    rng = random.Random(seed)
    g = random_connected(rng.randint(2, 10), rng.random() * 0.6, seed)
    for w in range(1, 5):
        for connected in (False, True):
            a = search_at_width(g, w, connected=connected, kernel="python")
            b = search_at_width(g, w, connected=connected, kernel="cython")
            assert a[0] == b[0]
            assert a[1] == b[1]
            assert a[2] == b[2]


def test_budget_gives_certified_lower_bound(kernel):
    g = complete(8)
    full = exact_tpw(g, kernel=kernel)
    part = exact_tpw(g, node_budget=5, kernel=kernel)
    assert not part.complete
    assert part.lower_bound <= full.width <= part.width
    assert verify_tree_partition(g, part.partition)


def test_time_budget_path():
    res = exact_tpw(complete(8), time_budget=30.0)
    assert res.complete and res.width == 4
