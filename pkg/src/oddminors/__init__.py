"""Odd clique minors in graph products: certified lower-bound
constructions, a certificate verifier, and an exact exhaustive-search
oracle for small instances."""

from .graphs import (Graph, complete, cycle, flatten, graph_from_edges,
                     hamming, is_bipartite, make_named_graph, path, product,
                     read_graph6, read_graph_text, spanning_tree, star,
                     unflatten, write_graph_text)
from .expansion import (BranchTree, OddExpansionModel, Verdict, branch_tree,
                        parse_model, serialize_model, verify_odd_expansion)
from .constructions import (BaseModel, GridForest, best_lower_bound,
                            cartesian_complete_model, cartesian_lift,
                            direct_general_model, direct_k3_model,
                            direct_k3_upper_bound, hamming_model,
                            identity_model, odd_cycle_model,
                            product_grid_forest, star_model, strong_model,
                            witness_product_coloring)
from .oracle import ExactResult, SearchBudget, has_odd_clique_minor, odd_hadwiger

__version__ = "0.1.0"
