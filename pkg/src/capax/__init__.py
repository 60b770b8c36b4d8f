"""Independence number, theta functions and Shannon capacity bounds of graphs."""
from .graph import (
    Graph,
    adjacency_matrix,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    hamming_graph,
    petersen_graph,
    strong_power,
    strong_product,
)
from .graphio import emit_graph, parse_graph
from .independence import SearchBudget, is_independent_set, max_independent_set
from .sdp import lovasz_theta, schrijver_theta

__version__ = "0.1.0"
