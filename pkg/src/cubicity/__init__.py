"""k-cube representations of graphs.

Builders return a :class:`CubeRepresentation` (one integer interval
assignment per axis) together with a :class:`BuildReport`.
"""

from ._kernels import BACKEND
from .banded import (
    BlockDecomposition,
    LinearArrangement,
    build_detband,
    build_i0,
    decompose,
    heuristic_arrangement,
    width,
)
from .builders import (
    BuildError,
    BuildReport,
    RetryCapExhausted,
    build_det,
    build_rand,
    rand_invocation,
    survival_bound,
    survival_probability_given_pi,
)
from .graph import (
    Graph,
    GraphError,
    GraphFormatError,
    NonEdgeSet,
    intersect,
    is_supergraph,
    max_degree,
    non_edges,
    read_graph,
    write_graph,
)
from .intervals import (
    Bipartition,
    CubeRepresentation,
    IntervalAssignment,
    Permutation,
    construct_m,
    induced_graph,
    project,
    scale_to_unit,
    union_assignments,
    verify_representation,
)

__version__ = "0.1.0"
