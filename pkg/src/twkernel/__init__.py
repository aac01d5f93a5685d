"""Treewidth kernelization toolkit.

Reduction rules for treewidth parameterized by a vertex cover or a
feedback vertex set, exact oracles to check them against, and generators
for the gadgets behind the matching kernel lower bounds.
"""
from .graph import Graph, WeightedGraph
from .reduction import Instance, ReductionOutcome, Verdict
from .vc_kernel import kernelize_vc
from .fvs_kernel import heuristic_low_mode, kernelize_fvs

__all__ = ["Graph", "WeightedGraph", "Instance", "ReductionOutcome", "Verdict",
           "kernelize_vc", "kernelize_fvs", "heuristic_low_mode"]
__version__ = "0.1.0"
