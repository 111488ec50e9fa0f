from fractions import Fraction

import pytest

from treepart.decomp import treewidth_exact
from treepart.errors import InputError
from treepart.generators import (
    FAMILIES,
    InstanceMeta,
    gadget_count,
    gen_family,
    gen_grid_h,
    gen_lower_general,
    gen_lower_tw2,
    random_ktree,
    tw2_index,
)
from treepart.graph import (
    has_clique,
    induced_subgraph,
    is_chordal,
    is_clique,
    max_degree,
    simplicial_vertices,
)
from treepart.partition import exact_tpw


def test_grid_h():
    g, meta = gen_grid_h(9, 4)
    assert g.n == 36 and max_degree(g) == 11
    for x in range(9):
        assert is_clique(g, range(4 * x, 4 * x + 4))
    for y in range(4):
        row, _ = induced_subgraph(g, [4 * x + y for x in range(9)])
        assert row.m == 8 and max_degree(row) == 2
    assert meta.vertex_labels[5] == (2, 2)
    assert treewidth_exact(g)[0] == 7 == meta.claimed_tw


def test_lower_general_k4():
    g, meta = gen_lower_general(4, 15, 9)
    assert g.n == 36 + 32 * 2 == 100
    assert max_degree(g) <= 15
    assert bool(is_chordal(g))
    assert treewidth_exact(g)[0] == 7
    assert meta.claimed_tpw_lower == Fraction(3) and meta.lower_strict
    gadgets = set(range(36, 100))
    assert simplicial_vertices(g) - set(range(36)) == gadgets
    assert all(not (g.adj[v] & gadgets) for v in gadgets)


def test_lower_general_small():
    g, meta = gen_lower_general(2, 7, 3)
    assert g.n == 6 + 4 * gadget_count(2, 7) == 10
    assert treewidth_exact(g)[0] == 3 and max_degree(g) <= 7 and bool(is_chordal(g))
    assert exact_tpw(g).width > meta.claimed_tpw_lower


@pytest.mark.parametrize("args", [(1, 7, 5), (2, 6, 5), (4, 15, 6), (2, 7, 2)])
def test_lower_general_preconditions(args):
    with pytest.raises(InputError):
        gen_lower_general(*args)


def test_lower_tw2():
    g, meta = gen_lower_tw2(13)
    assert g.n == 1 + 13 + 12 * 5 == 74
    assert max_degree(g) == 13
    assert bool(is_chordal(g)) and treewidth_exact(g)[0] == 2
    assert not has_clique(g, 4)
    assert meta.claimed_tpw_lower == Fraction(8)
    assert meta.vertex_labels[tw2_index(13, 4, 2)] == ("w", 4, 2)
    _, meta11 = gen_lower_tw2(11)
    assert meta11.claimed_tpw_lower == Fraction(20, 3) and meta11.tpw_lower_int() == 7


def test_lower_tw2_small_withholds_claim():
    g, meta = gen_lower_tw2(5)
    assert g.n == 1 + 5 + 4 and meta.claimed_tpw_lower is None
    assert max_degree(g) == 5
    with pytest.raises(InputError):
        gen_lower_tw2(12)
    with pytest.raises(InputError):
        gen_lower_tw2(3)


def test_family_examples():
    g, meta = gen_family("wheel", {"n": 8})
    assert g.degree(0) == 8 and treewidth_exact(g)[0] == 3
    g, meta = gen_family("clique", {"n": 6})
    assert exact_tpw(g).width == 3 == meta.claimed_tpw_upper
    g, _ = gen_family("random_ktree", {"n": 10, "k": 2}, seed=1)
    assert bool(is_chordal(g)) and treewidth_exact(g)[0] == 2
    with pytest.raises(InputError):
        gen_family("petersen", {})
    with pytest.raises(InputError):
        gen_family("path", {})


def test_families_deterministic():
    for fam, params in [("random_ktree", {"n": 30, "k": 3}), ("random_tree", {"n": 20}),
                        ("random_connected", {"n": 12, "p": 0.3})]:
        assert gen_family(fam, params, 7)[0] == gen_family(fam, params, 7)[0]
        assert gen_family(fam, params, 7)[0] != gen_family(fam, params, 8)[0]


def test_ktree_degree_cap():
    g = random_ktree(60, 2, 0, max_degree=8)
    assert max_degree(g) <= 8


@pytest.mark.parametrize("fam,params", [
    ("path", {"n": 7}), ("cycle", {"n": 6}), ("clique", {"n": 5}), ("wheel", {"n": 5}),
    ("random_ktree", {"n": 12, "k": 3}), ("grid_h", {"n": 4, "k": 2}),
    ("lower_general", {"k": 2, "delta": 7, "n": 3}), ("lower_tw2", {"delta": 7}),
])
def test_claims_hold(fam, params):
    g, meta = gen_family(fam, params, 3)
    assert fam in FAMILIES
    assert bool(is_chordal(g)) == meta.claimed_chordal
    assert treewidth_exact(g)[0] == meta.claimed_tw
    if meta.claimed_maxdeg_bound is not None:
        assert max_degree(g) <= meta.claimed_maxdeg_bound
    assert len(meta.vertex_labels) == g.n == len(set(map(str, meta.vertex_labels)))
    if g.n <= 12:
        w = exact_tpw(g).width
        lo = meta.tpw_lower_int()
        if lo is not None:
            assert lo <= w
        if meta.claimed_tpw_upper is not None:
            assert w <= meta.claimed_tpw_upper


def test_meta_roundtrip():
    _, meta = gen_lower_general(4, 15, 9)
    back = InstanceMeta.from_pairs(dict(meta.to_pairs()))
    assert back.family == meta.family and back.params == meta.params
    assert back.claimed_tpw_lower == meta.claimed_tpw_lower and back.lower_strict
    assert back.claimed_tw == 7 and back.claimed_chordal
