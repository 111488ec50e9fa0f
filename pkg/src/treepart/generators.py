"""Graph families with analytic metadata.

Index layouts are fixed so tests can address named vertices:

* ``grid_h`` / ``lower_general``: vertex (x, y), x in 1..n, y in 1..k, has
  index (x-1)k + (y-1). Gadget vertices follow, grouped by horizontal edge
  (x, y)-(x+1, y) in (x, y, l) lexicographic order.
* ``lower_tw2``: r = 0, v_i = i for i in 1..delta, then w_{i,l} in (i, l)
  lexicographic order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InputError
from .graph import Graph


@dataclass
class InstanceMeta:
    family: str
    params: dict[str, Any]
    claimed_tw: int | tuple[int, int] | None = None
    claimed_maxdeg_bound: int | None = None
    claimed_tpw_lower: Fraction | None = None
    lower_strict: bool = False
    claimed_tpw_upper: Fraction | None = None
    claimed_chordal: bool | None = None
    vertex_labels: list[Any] = field(default_factory=list)

    def tpw_lower_int(self) -> int | None:
        """Smallest integer width compatible with the claimed lower bound."""
        if self.claimed_tpw_lower is None:
            return None
        lo = self.claimed_tpw_lower
        return math.floor(lo) + 1 if self.lower_strict else math.ceil(lo)

    def to_pairs(self) -> list[tuple[str, str]]:
        out = [("family", self.family)]
        out += [(k, str(v)) for k, v in sorted(self.params.items())]
        if self.claimed_tw is not None:
            tw = self.claimed_tw
            out.append(("claimed_tw", f"{tw[0]}..{tw[1]}" if isinstance(tw, tuple) else str(tw)))
        if self.claimed_maxdeg_bound is not None:
            out.append(("claimed_maxdeg_bound", str(self.claimed_maxdeg_bound)))
        if self.claimed_tpw_lower is not None:
            out.append(("claimed_tpw_lower", str(self.claimed_tpw_lower)))
            out.append(("lower_strict", "1" if self.lower_strict else "0"))
        if self.claimed_tpw_upper is not None:
            out.append(("claimed_tpw_upper", str(self.claimed_tpw_upper)))
        if self.claimed_chordal is not None:
            out.append(("claimed_chordal", "1" if self.claimed_chordal else "0"))
        return out

    @classmethod
    def from_pairs(cls, pairs: dict[str, str]) -> InstanceMeta:
        pairs = dict(pairs)
        meta = cls(family=pairs.pop("family", "unknown"), params={})
        tw = pairs.pop("claimed_tw", None)
        if tw is not None:
            if ".." in tw:
                lo, hi = tw.split("..")
                meta.claimed_tw = (int(lo), int(hi))
            else:
                meta.claimed_tw = int(tw)
        if "claimed_maxdeg_bound" in pairs:
            meta.claimed_maxdeg_bound = int(pairs.pop("claimed_maxdeg_bound"))
        if "claimed_tpw_lower" in pairs:
            meta.claimed_tpw_lower = Fraction(pairs.pop("claimed_tpw_lower"))
        meta.lower_strict = pairs.pop("lower_strict", "0") == "1"
        if "claimed_tpw_upper" in pairs:
            meta.claimed_tpw_upper = Fraction(pairs.pop("claimed_tpw_upper"))
        if "claimed_chordal" in pairs:
            meta.claimed_chordal = pairs.pop("claimed_chordal") == "1"
        for key, val in pairs.items():
            try:
                meta.params[key] = int(val)
            except ValueError:
                meta.params[key] = val
        return meta


def _grid_index(x: int, y: int, k: int) -> int:
    return (x - 1) * k + (y - 1)


def _grid_edges(n: int, k: int) -> list[tuple[int, int]]:
    edges = []
    for x in range(1, n + 1):
        for y1 in range(1, k + 1):
            for y2 in range(y1 + 1, k + 1):
                edges.append((_grid_index(x, y1, k), _grid_index(x, y2, k)))
            if x < n:
                for y2 in range(1, k + 1):
                    edges.append((_grid_index(x, y1, k), _grid_index(x + 1, y2, k)))
    return edges


def gen_grid_h(n: int, k: int) -> tuple[Graph, InstanceMeta]:
    """Columns are k-cliques, consecutive columns are completely joined."""
    if n < 1 or k < 1:
        raise InputError(f"grid_h needs n >= 1 and k >= 1, got n={n}, k={k}")
    g = Graph(n * k, _grid_edges(n, k))
    if n >= 2:
        tw = 2 * k - 1
    else:
        tw = k - 1
    maxdeg = 3 * k - 1 if n >= 3 else (2 * k - 1 if n == 2 else k - 1)
    labels = [(x, y) for x in range(1, n + 1) for y in range(1, k + 1)]
    meta = InstanceMeta("grid_h", {"n": n, "k": k}, claimed_tw=tw,
                        claimed_maxdeg_bound=maxdeg, claimed_chordal=True,
                        vertex_labels=labels)
    return g, meta


def gadget_count(k: int, delta: int) -> int:
    """ceil((delta - 3k) / 2) vertices per horizontal edge."""
    return -(-(delta - 3 * k) // 2)


def gen_lower_general(k: int, delta: int, n: int) -> tuple[Graph, InstanceMeta]:
    """Grid graph H with every horizontal edge thickened by common neighbours.

    Chordal, tree-width 2k-1, maximum degree at most ``delta``, and
    tree-partition-width strictly above k(delta - 3k)/4.
    """
    if k < 2 or delta < 3 * k + 1:
        raise InputError(f"lower_general needs k >= 2 and delta >= 3k+1, got k={k}, delta={delta}")
    if not (2 * n > k * (delta - 3 * k) and n > 2):
        raise InputError(
            f"lower_general needs n > max(k(delta-3k)/2, 2) = {max(Fraction(k * (delta - 3 * k), 2), 2)}, got n={n}")
    c = gadget_count(k, delta)
    edges = _grid_edges(n, k)
    labels: list[Any] = [(x, y) for x in range(1, n + 1) for y in range(1, k + 1)]
    nxt = n * k
    for x in range(1, n):
        for y in range(1, k + 1):
            v, w = _grid_index(x, y, k), _grid_index(x + 1, y, k)
            for ell in range(1, c + 1):
                edges.append((nxt, v))
                edges.append((nxt, w))
                labels.append(("g", x, y, ell))
                nxt += 1
    g = Graph(nxt, edges)
    meta = InstanceMeta("lower_general", {"k": k, "delta": delta, "n": n},
                        claimed_tw=2 * k - 1, claimed_maxdeg_bound=delta,
                        claimed_tpw_lower=Fraction(k * (delta - 3 * k), 4), lower_strict=True,
                        claimed_chordal=True, vertex_labels=labels)
    return g, meta


def tw2_index(delta: int, i: int, ell: int) -> int:
    """Index of w_{i,ell} in ``gen_lower_tw2(delta)``."""
    per = (delta - 3) // 2
    return 1 + delta + (i - 1) * per + (ell - 1)


def gen_lower_tw2(delta: int) -> tuple[Graph, InstanceMeta]:
    """Fan on a path v_1..v_delta with hub r; every path edge gets (delta-3)/2
    common neighbours.

    The tree-partition-width lower bound 2(delta-1)/3 is only attached for
    delta >= 11; smaller odd delta >= 5 builds the same shape without it.
    """
    if delta % 2 == 0:
        raise InputError(f"lower_tw2 needs odd delta, got {delta}")
    if delta < 5:
        raise InputError(f"lower_tw2 needs delta >= 5, got {delta}")
    per = (delta - 3) // 2
    edges = []
    labels: list[Any] = ["r"] + [("v", i) for i in range(1, delta + 1)]
    for i in range(1, delta + 1):
        edges.append((0, i))
    for i in range(1, delta):
        edges.append((i, i + 1))
    for i in range(1, delta):
        for ell in range(1, per + 1):
            w = tw2_index(delta, i, ell)
            edges.append((i, w))
            edges.append((i + 1, w))
            labels.append(("w", i, ell))
    g = Graph(len(labels), edges)
    meta = InstanceMeta("lower_tw2", {"delta": delta}, claimed_tw=2,
                        claimed_maxdeg_bound=delta, claimed_chordal=True,
                        vertex_labels=labels)
    if delta >= 11:
        meta.claimed_tpw_lower = Fraction(2 * (delta - 1), 3)
    return g, meta


def random_ktree(n: int, k: int, seed: int, max_degree: int | None = None) -> Graph:
    """Seeded k-tree: a (k+1)-clique, then each vertex joins a random k-clique.

    With ``max_degree`` only cliques whose members all have spare degree are
    eligible; generation fails if none is left.
    """
    if k < 1 or n < k + 1:
        raise InputError(f"random k-tree needs k >= 1 and n >= k+1, got n={n}, k={k}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(k + 1) for v in range(u + 1, k + 1)]
    deg = [k] * (k + 1)
    cliques = [tuple(c for c in range(k + 1) if c != skip) for skip in range(k + 1)]
    for v in range(k + 1, n):
        pool = cliques
        if max_degree is not None:
            pool = [c for c in cliques if all(deg[u] < max_degree for u in c)]
            if not pool:
                raise InputError(f"no k-clique with spare degree left at vertex {v}")
        base = pool[rng.randrange(len(pool))]
        deg.append(k)
        for u in base:
            edges.append((u, v))
            deg[u] += 1
        for skip in range(k):
            cliques.append(tuple(sorted(base[:skip] + base[skip + 1:] + (v,))))
    return Graph(n, edges)


def random_tree(n: int, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_connected(n: int, p: float, seed: int) -> Graph:
    """Random spanning tree plus independent extra edges with probability p."""
    rng = random.Random(seed)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, edges)


FAMILIES = ("path", "cycle", "clique", "wheel", "random_ktree", "random_tree",
            "random_connected", "grid_h", "lower_general", "lower_tw2")


def _need(params: dict, *keys: str) -> list[int]:
    missing = [k for k in keys if k not in params]
    if missing:
        raise InputError(f"missing parameter(s): {', '.join(missing)}")
    return [params[k] for k in keys]


def gen_family(name: str, params: dict[str, Any] | None = None, seed: int = 0) -> tuple[Graph, InstanceMeta]:
    params = dict(params or {})
    if name == "grid_h":
        n, k = _need(params, "n", "k")
        return gen_grid_h(n, k)
    if name == "lower_general":
        k, delta, n = _need(params, "k", "delta", "n")
        return gen_lower_general(k, delta, n)
    if name == "lower_tw2":
        (delta,) = _need(params, "delta")
        return gen_lower_tw2(delta)
    if name == "path":
        (n,) = _need(params, "n")
        if n < 1:
            raise InputError("path needs n >= 1")
        g = Graph(n, [(i, i + 1) for i in range(n - 1)])
        meta = InstanceMeta("path", {"n": n}, claimed_tw=min(1, n - 1),
                            claimed_maxdeg_bound=min(2, n - 1), claimed_chordal=True,
                            claimed_tpw_lower=Fraction(1), claimed_tpw_upper=Fraction(1))
    elif name == "cycle":
        (n,) = _need(params, "n")
        if n < 3:
            raise InputError("cycle needs n >= 3")
        g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        meta = InstanceMeta("cycle", {"n": n}, claimed_tw=2, claimed_maxdeg_bound=2,
                            claimed_chordal=(n == 3), claimed_tpw_lower=Fraction(2),
                            claimed_tpw_upper=Fraction(2))
    elif name == "clique":
        (n,) = _need(params, "n")
        if n < 1:
            raise InputError("clique needs n >= 1")
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
        # a complete quotient is a forest only with at most two bags
        half = Fraction(-(-n // 2))
        meta = InstanceMeta("clique", {"n": n}, claimed_tw=n - 1, claimed_maxdeg_bound=n - 1,
                            claimed_chordal=True, claimed_tpw_lower=half, claimed_tpw_upper=half)
    elif name == "wheel":
        (n,) = _need(params, "n")
        if n < 3:
            raise InputError("wheel needs at least 3 rim vertices")
        rim = [(i, i % n + 1) for i in range(1, n + 1)]
        g = Graph(n + 1, [(0, i) for i in range(1, n + 1)] + rim)
        meta = InstanceMeta("wheel", {"n": n}, claimed_tw=3, claimed_maxdeg_bound=max(n, 3),
                            claimed_chordal=(n == 3),
                            vertex_labels=["hub"] + [("rim", i) for i in range(1, n + 1)])
    elif name == "random_ktree":
        n, k = _need(params, "n", "k")
        md = params.get("max_degree")
        g = random_ktree(n, k, seed, md)
        meta = InstanceMeta("random_ktree", {"n": n, "k": k, "seed": seed}, claimed_tw=k,
                            claimed_chordal=True)
        if md is not None:
            meta.params["max_degree"] = md
            meta.claimed_maxdeg_bound = md
    elif name == "random_tree":
        (n,) = _need(params, "n")
        g = random_tree(n, seed)
        meta = InstanceMeta("random_tree", {"n": n, "seed": seed}, claimed_tw=min(1, n - 1),
                            claimed_chordal=True, claimed_tpw_lower=Fraction(1),
                            claimed_tpw_upper=Fraction(1))
    elif name == "random_connected":
        n, p = _need(params, "n", "p")
        g = random_connected(n, float(p), seed)
        meta = InstanceMeta("random_connected", {"n": n, "p": p, "seed": seed})
    else:
        raise InputError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    if not meta.vertex_labels:
        meta.vertex_labels = list(range(g.n))
    return g, meta
