"""Minimum recoloring of a graph coloring into a proper one."""

from .bipartite import bipartition_classes, solve_bipartite
from .branching import fix_branching, solve_branching
from .errors import (
    ColorFixError,
    InfeasibleError,
    MalformedInputError,
    ParseError,
    SizeGuardError,
    ValidationError,
)
from .fixing import (
    FixingNumberReport,
    fixing_number,
    fixing_number_r,
    hard_family,
    star_graph,
    worst_star_coloring,
    worst_tree_coloring,
)
from .graph import (
    Coloring,
    ColorLists,
    ConflictGraph,
    FixInstance,
    FixResult,
    Graph,
    Status,
    changed_vertices,
    conflict_graph,
    distance,
    is_proper,
    matching_lower_bound,
    verify_witness,
)
from .io_formats import (
    InstanceFile,
    parse_coloring,
    parse_coloring_file,
    parse_graph,
    parse_tree_decomposition,
    read_instance,
    serialize_coloring,
    serialize_graph,
    serialize_tree_decomposition,
    write_instance,
)
from .oracle import solve_oracle_subsets
from .partition import chromatic_number, max_weighted_partition, solve_partition
from .reductions import (
    ListFixInstance,
    MsiInstance,
    PrExtInstance,
    cross_compose,
    cross_compose_lists,
    listfix_to_fix,
    msi_to_listfix,
    preext_to_fix,
    vc_to_fix,
)
from .solve import solve
from .treewidth import (
    NiceTreeDecomposition,
    TreeDecomposition,
    make_nice,
    min_fill_decomposition,
    solve_treewidth,
)

__all__ = [name for name in dir() if not name.startswith("_")]
