"""Tree-partitions of bounded width for graphs of bounded tree-width and degree.

The exact tree-partition-width search runs on a compiled kernel when the
extension is built and on a pure-Python twin otherwise; see
``treepart.partition.KERNELS``.
"""

from .bounds import BoundReport, audit, bound_formulas, theorem2_params
from .construct import AnchorCall, anchored_construct, construct_tree_partition
from .decomp import (
    SeparatorResult,
    TreeDecomposition,
    balanced_separator,
    clique_tree_from_peo,
    treewidth_exact,
    treewidth_heuristic,
    verify_tree_decomposition,
)
from .errors import CapacityError, ContractError, InputError
from .generators import InstanceMeta, gen_family, gen_grid_h, gen_lower_general, gen_lower_tw2
from .graph import (
    EliminationOrder,
    Graph,
    build_graph,
    connected_components,
    induced_subgraph,
    is_chordal,
    max_degree,
    simplicial_vertices,
)
from .partition import (
    DEFAULT_KERNEL,
    ExactResult,
    TreePartition,
    exact_tpw,
    quotient_graph,
    refine_connected,
    verify_tree_partition,
)
from .quadnum import ALPHA, GAMMA, QuadNum, lemma3_width_bound

__version__ = "0.1.0"
