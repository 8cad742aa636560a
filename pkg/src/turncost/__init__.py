"""Exact solvers for minimum turning-cost Eulerian circuits on multigraphs."""

from .core import (
    FORBIDDEN,
    BrokenAdjacencyError,
    Circuit,
    CircuitError,
    DuplicateEdgeError,
    Graph,
    HalfEdge,
    MissingEdgeError,
    NotConnectedError,
    NotEulerianError,
    TransitionSystem,
    TurningCostTable,
    augment_to_eulerian,
    canonical_circuit,
    circuit_cost,
    find_eulerian_circuit,
    is_eulerian,
    transitions_of,
    validate_circuit,
)
from .solvers import (
    InstanceTooLargeError,
    SolveResult,
    TooLargeError,
    decide_budget,
    held_karp,
    oracle_min_circuit,
    solve_via_tsp,
    zero_cost_circuit,
)
from .reduction import (
    LineGraphInstance,
    MalformedCycleError,
    SubdividedGraph,
    WeightedGraph,
    lift_hamiltonian,
    line_graph_weighted,
    subdivide_twice,
)
from .planar import (
    FaceColoring,
    InvalidRotationError,
    NotFaceTwoColorableError,
    NotFourRegularError,
    PlaneGraph,
    TaitGraph,
    face_two_color,
    is_non_crossing,
    min_cost_atrail,
    smoothing_to_circuit,
    tait_graph,
    trace_faces,
)
from .gadget import (
    AmbiguousTransitionError,
    CnfFormula,
    CnfSyntaxError,
    GadgetGraph,
    NotThreeSatError,
    NotZeroCostError,
    build_gadget,
    check_sat_equivalence,
    extract_assignment,
    normalize_mod4,
    parse_cnf,
)
from .blowup import (
    ApexBlowup,
    BadDegreeError,
    BlownGadget,
    DegreeDivisibleBy4Error,
    NotPerfectPairingError,
    VariableBlowup,
    blow_up,
    build_apex_blowup,
    build_variable_blowup,
    route_apex_paths,
)

__version__ = "0.1.0"
