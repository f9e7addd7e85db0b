"""DFS trees that survive vertex/edge faults and online updates."""
from .applications import (
    HighPointTable,
    LcaIndex,
    biconnectivity,
    collect_aux_edges,
    compute_high_points,
    is_connected,
    same_component,
)
from .cascade import cascade_build, cascade_search
from .errors import EmptyGraph, InternalInvariantError, InvalidInput, InvalidQuery
from .fault_dynamic import (
    DeleteEdge,
    DeleteVertex,
    DynamicDFS,
    InsertEdge,
    InsertVertex,
    apply_faults,
    dynamic_step,
    fault_tolerant_session,
    k_prime,
    query_fault_tolerant,
)
from .graph_core import NO_FAULTS, ROOT, FaultSet, Graph, build_graph
from .preprocess import DfsTree, Preprocessed, preprocess
from .reroot_engine import Session, run_reroot
from .verify_oracle import brute_force_dfs, check_dfs_tree, random_instance

__all__ = [name for name in dir() if not name.startswith("_")]
