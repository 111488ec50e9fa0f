"""Text formats for graphs, tree decompositions and tree-partitions.

All vertex and bag numbers in files are 1-based.

Graph::

    c optional comment
    c meta family=lower_tw2
    p tpw <n> <m>
    e <u> <v>

Tree decomposition::

    s td <#bags> <width+1> <n>
    b <bag_id> <v> ...
    <bag_id> <bag_id>

Tree-partition (quotient edges are derived, never stored)::

    s tp <#bags> <width> <n>
    b <bag_id> <v> ...
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .decomp import TreeDecomposition
from .errors import InputError
from .generators import InstanceMeta
from .graph import Graph
from .partition import TreePartition


def _lines(src: str | TextIO) -> Iterable[tuple[int, str]]:
    text = src if isinstance(src, str) else src.read()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line:
            yield no, line


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {no}: expected integers, got {' '.join(tokens)!r}") from None


def write_graph(g: Graph, meta: InstanceMeta | None = None) -> str:
    out = []
    if meta is not None:
        for key, val in meta.to_pairs():
            out.append(f"c meta {key}={val}")
    out.append(f"p tpw {g.n} {g.m}")
    out += [f"e {u + 1} {v + 1}" for u, v in g.sorted_edges()]
    return "\n".join(out) + "\n"


def read_graph(src: str | TextIO) -> tuple[Graph, InstanceMeta | None]:
    n = m = None
    edges = []
    meta_pairs: dict[str, str] = {}
    for no, line in _lines(src):
        parts = line.split()
        if parts[0] == "c":
            if len(parts) >= 3 and parts[1] == "meta" and "=" in parts[2]:
                key, _, val = " ".join(parts[2:]).partition("=")
                meta_pairs[key] = val
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "tpw":
                raise InputError(f"line {no}: expected 'p tpw <n> <m>'")
            n, m = _ints(parts[2:], no)
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {no}: edge before header")
            if len(parts) != 3:
                raise InputError(f"line {no}: expected 'e <u> <v>'")
            u, v = _ints(parts[1:], no)
            edges.append((u - 1, v - 1))
        else:
            raise InputError(f"line {no}: unknown record {parts[0]!r}")
    if n is None:
        raise InputError("missing 'p tpw' header")
    if len(edges) != m:
        raise InputError(f"header announces {m} edges, found {len(edges)}")
    g = Graph(n, edges)
    meta = InstanceMeta.from_pairs(meta_pairs) if meta_pairs else None
    return g, meta


def write_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags):
        out.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    out += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(out) + "\n"


def read_td(src: str | TextIO) -> tuple[TreeDecomposition, int]:
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    for no, line in _lines(src):
        parts = line.split()
        if parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise InputError(f"line {no}: expected 's td <#bags> <width+1> <n>'")
            header = _ints(parts[2:], no)
        elif parts[0] == "b":
            ids = _ints(parts[1:], no)
            if not ids:
                raise InputError(f"line {no}: bag line without id")
            bags[ids[0]] = [v - 1 for v in ids[1:]]
        else:
            a, b = _ints(parts, no)
            edges.append((a - 1, b - 1))
    if header is None:
        raise InputError("missing 's td' header")
    nb, _, n = header
    if sorted(bags) != list(range(1, nb + 1)):
        raise InputError(f"expected bags 1..{nb}")
    td = TreeDecomposition([bags[i] for i in range(1, nb + 1)], edges)
    return td, n


def write_tp(tp: TreePartition) -> str:
    out = [f"s tp {len(tp.bags)} {tp.width} {tp.n}"]
    for i, bag in enumerate(tp.bags):
        out.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    return "\n".join(out) + "\n"


def read_tp(src: str | TextIO) -> TreePartition:
    header = None
    bags: dict[int, list[int]] = {}
    for no, line in _lines(src):
        parts = line.split()
        if parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "tp":
                raise InputError(f"line {no}: expected 's tp <#bags> <width> <n>'")
            header = _ints(parts[2:], no)
        elif parts[0] == "b":
            ids = _ints(parts[1:], no)
            bags[ids[0]] = [v - 1 for v in ids[1:]]
        else:
            raise InputError(f"line {no}: unknown record {parts[0]!r}")
    if header is None:
        raise InputError("missing 's tp' header")
    nb, _, n = header
    if sorted(bags) != list(range(1, nb + 1)):
        raise InputError(f"expected bags 1..{nb}")
    return TreePartition.from_bags(n, [bags[i] for i in range(1, nb + 1)])


def to_dot(g: Graph, tp: TreePartition | None = None, labels=None) -> str:
    """DOT rendering; with a tree-partition, bags become clusters."""
    def name(v):
        return f'"{labels[v]}"' if labels else str(v + 1)

    out = ["graph G {"]
    if tp is not None:
        for i, bag in enumerate(tp.bags):
            out.append(f"  subgraph cluster_{i + 1} {{ label=\"B{i + 1}\";")
            out += [f"    {name(v)};" for v in sorted(bag)]
            out.append("  }")
    else:
        out += [f"  {name(v)};" for v in range(g.n)]
    out += [f"  {name(u)} -- {name(v)};" for u, v in g.sorted_edges()]
    out.append("}")
    return "\n".join(out) + "\n"
