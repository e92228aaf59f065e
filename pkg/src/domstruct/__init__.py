"""Domination structures in 3-connected graphs, with an exact-oracle harness."""

from .cycles import Cycle, CycleBudget, c_g, enumerate_cycles
from .domination import (
    DominationResult,
    OracleRefused,
    StructureMethodFailed,
    brute_force_gamma,
    greedy_gamma,
    is_dominating,
    structure_gamma,
)
from .graph import (
    Graph,
    GraphFormatError,
    closed_neighborhood,
    generate_named,
    generate_random_3connected,
    is_3_connected,
    load_graph,
    save_edgelist,
)
from .structure import (
    Family,
    IntersectionShape,
    Structure,
    build_family,
    enumerate_structures,
    grow_structure,
    intersection_shape,
    is_seamless,
    reduce_d_sg,
    to_dot,
)
from .x3assign import (
    Assignment,
    AttachmentType,
    assign_x3,
    classify_attachment,
    has_closed_x3_path,
    min_label_assignment,
)

__version__ = "0.1.0"
