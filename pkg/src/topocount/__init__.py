"""Topologies on finite sets: counting, group actions, and congruences for T(n)."""
from .core import (MinimalBase, Preorder, SetFamily, Subset, Topology, from_preorder,
                   generate_topology, is_minimal_base, is_t0, is_topology, minimal_open_sets,
                   to_preorder)
from .enumeration import (CountTable, count_t0, count_topologies_naive, count_topologies_partition,
                          enumerate_preorders, stirling2)
from .group import (CyclicAction, Permutation, apply_to_topology, burnside_congruence, count_fixed,
                    is_fixed)
from .congruence import Residue, KReport, crt, k_bounds, k_crt, k_direct, verify

__version__ = "0.1.0"
