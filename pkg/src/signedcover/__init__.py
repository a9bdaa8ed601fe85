"""Short signed-circuit covers of signed multigraphs, with certificates and brute-force oracles."""

from .cover import (
    CoverFamily,
    NotFlowAdmissible,
    PositiveCycle,
    PreconditionError,
    bridgeless_circuit_cover,
    cover_outside_core,
    even_subgraph_for,
    loop_cover_t,
    s_cover,
    scc_8_3,
    scc_19_6,
    short_signed_circuit,
)
from .cycles import Barbell, Cycle, decompose_even, maximize_positive_decomposition, shortest_negative_cycle, tau
from .graph import (
    AdmissibilityReport,
    Edge,
    GraphError,
    SignedGraph,
    Switching,
    apply_switching,
    bridges,
    check_half_negative_cuts,
    core_edges,
    is_balanced,
    is_flow_admissible,
    max_bridgeless_subgraph,
    negativeness,
    parse_sg,
    format_sg,
    positive_subgraph,
    read_sg,
    write_sg,
)
from .tjoin import TJoinInstance, min_tjoin, tjoin_upper_bound
from .verify import Certificate, certify_tjoin, verify_cover

__version__ = "0.1.0"
