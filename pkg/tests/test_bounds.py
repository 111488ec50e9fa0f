import math
import random
from fractions import Fraction

import pytest

from treepart.bounds import CSV_HEADER, audit, bound_formulas, theorem2_params
from treepart.errors import InputError
from treepart.generators import gen_family, gen_lower_tw2, random_connected, random_tree
from treepart.graph import Graph
from treepart.quadnum import lemma3_width_bound


def test_formula_examples():
    f = bound_formulas(3, 10, chordal=True)
    assert f["referee_upper"] == 720
    assert f["theorem1_upper"] == 340
    assert f["chordal_upper"] == 27
    assert bound_formulas(5, 3)["seese_lower"] == 3
    assert bound_formulas(1, 1)["theorem1_upper"] == Fraction(25, 2)
    assert bound_formulas(1, 2)["lemma3_upper"] == lemma3_width_bound(1, 2)


def test_formula_applicability():
    f = bound_formulas(2, 5, chordal=False)
    assert "referee_upper" not in f and "chordal_upper" not in f
    assert "chordal_upper" not in bound_formulas(3, 1, chordal=True)
    with pytest.raises(InputError):
        bound_formulas(0, 3)


def test_theorem2_params():
    assert theorem2_params(3, Fraction(1, 16)) == (2, 12, Fraction(1, 16))
    ell, thr, _ = theorem2_params(4, Fraction(1, 16))
    assert (ell, thr) == (2, 12)
    ell, thr, _ = theorem2_params(9, Fraction(1, 10))
    assert (ell, thr) == (5, Fraction(75, 4))
    with pytest.raises(InputError):
        theorem2_params(3, Fraction(1, 8))
    with pytest.raises(InputError):
        theorem2_params(2, Fraction(1, 16))


def test_audit_clique6():
    g, meta = gen_family("clique", {"n": 6})
    rep = audit(g, meta)
    assert rep.seese_lower == 3 and rep.exact_tpw == 3
    assert rep.flags["sandwich"] == "satisfied" and rep.ok


def test_audit_path7():
    g, meta = gen_family("path", {"n": 7})
    rep = audit(g, meta)
    assert rep.exact_tpw == 1 and rep.lemma3_ceiling == 66
    assert rep.flags["sandwich"] == "satisfied"


def test_audit_lower_tw2_11():
    g, meta = gen_lower_tw2(11)
    rep = audit(g, meta, node_budget=20_000)
    assert rep.family_lower == Fraction(20, 3)
    assert rep.exact_status in ("lower_bound", "exact")
    assert rep.exact_lower <= rep.constructed_width <= math.ceil(lemma3_width_bound(2, 11))
    assert rep.ok


def test_audit_without_budget_skips_exact():
    g, meta = gen_lower_tw2(11)
    rep = audit(g, meta, node_budget=None)
    assert rep.exact_status == "not_computed" and rep.ok


def test_audit_disconnected():
    g = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    rep = audit(g)
    assert rep.exact_tpw == 2 and rep.ok


def test_csv_row_shape():
    g, meta = gen_family("clique", {"n": 6})
    row = audit(g, meta).csv_row()
    assert len(row.split(",")) == len(CSV_HEADER.split(","))
    fields = dict(zip(CSV_HEADER.split(","), row.split(",")))
    assert fields["exact_tpw"] == "3" and fields["exact_status"] == "exact"
    assert fields["theorem1_upper"] == "495/2"


@pytest.mark.parametrize("seed", range(20))
def test_audit_random_graphs(seed):
    rng = random.Random(seed)
    g = random_connected(rng.randint(2, 9), rng.random() * 0.5, seed)
    rep = audit(g)
    assert rep.ok, rep.flags
    assert 2 * rep.exact_tpw >= rep.tw_used + 1 or rep.tw_used == 1
