"""Compare the compiled and pure-Python search kernels.

Each workload is a full exact search; node counts must agree between
kernels, so the ratio of wall times is a like-for-like speedup.

    python benchmarks/bench_search.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import itertools
import time

from treepart.generators import gen_lower_tw2, random_connected, random_ktree
from treepart.graph import Graph
from treepart.partition import KERNELS, exact_tpw


def workloads():
    yield "K10", Graph(10, itertools.combinations(range(10), 2)), {}
    yield "G(12, 0.45)", random_connected(12, 0.45, 4), {}
    yield "3-tree n=12", random_ktree(12, 3, 4), {"chordal_pruning": True}
    yield "G(16, 0.3)", random_connected(16, 0.3, 1), {"node_budget": 300_000}
    yield "G(20, 0.3)", random_connected(20, 0.3, 3), {"node_budget": 300_000}
    yield "G(24, 0.2) budgeted", random_connected(24, 0.2, 1), {"node_budget": 300_000}
    yield "tw2 lower budgeted", gen_lower_tw2(11)[0], {"node_budget": 100_000}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    kernels = sorted(KERNELS)
    if "cython" not in KERNELS:
        print("compiled kernel not built; only timing the Python kernel")
    print(f"{'workload':24} {'width':>5} {'nodes':>9} " + " ".join(f"{k + ' s':>10}" for k in kernels)
          + ("    speedup" if len(kernels) == 2 else ""))
    for name, g, opts in workloads():
        times, seen = {}, set()
        for kern in kernels:
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                res = exact_tpw(g, max_n=g.n, kernel=kern, **opts)
                best = min(best, time.perf_counter() - t0)
            times[kern] = best
            seen.add((res.width, res.nodes, res.complete))
        if len(seen) != 1:
            raise SystemExit(f"kernels disagree on {name}: {seen}")
        width, nodes, _ = seen.pop()
        line = f"{name:24} {width:>5} {nodes:>9} " + " ".join(f"{times[k]:>10.4f}" for k in kernels)
        if len(kernels) == 2:
            line += f"  {times['python'] / max(times['cython'], 1e-9):>8.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
