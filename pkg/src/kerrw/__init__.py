"""One-step measurement of single-V polarization components with a cross-Kerr probe.

The package models an interferometer in which n polarized photons traverse a
chain of polarizing beam splitters, each Kerr-coupled mode advances a shared
coherent probe by an integer multiple of a base phase, and an X-quadrature
homodyne readout identifies which basis-state family the input occupied.

Modules
-------
states    polarization basis states, sparse superpositions, single-V sets
network   PBS chain topology, routing, occupations, roundtrip identity
phases    integer coefficient sets and full phase-shift tables
search    separability verification and exact coefficient search
homodyne  probe model, outcome sampling, classification, collapse
cli       command-line interface (tables, verify, search, simulate, curves)
"""

from .errors import (
    KerrWError,
    ResourceLimitError,
    SizeError,
    UnsupportedError,
    ValidationError,
)
from .homodyne import (
    Branch,
    ConfusionMatrix,
    MeasurementOutcome,
    ProbeModel,
    branch_partition,
    classify,
    confusion_matrix,
    error_probability,
    expected_x,
    measure_collapse,
    min_adjacent_gap,
    sample_x,
    worst_pair_error,
)
from .network import (
    NetworkTopology,
    OccupationVector,
    PBSNode,
    build_chain,
    occupations_closed_form,
    roundtrip_identity,
    route_basis,
    sweep_occupations,
    sweep_to_csv,
)
from .phases import (
    CoefficientSet,
    PhaseRow,
    PhaseTable,
    build_phase_table,
    canonicalize_coefficients,
    preset_coefficients,
    total_phase,
)
from .search import (
    DistinguishabilityReport,
    SearchConfig,
    certify_admissible,
    check_distinguishability,
    find_coefficients,
    minimal_coefficients,
)
from .states import (
    BasisState,
    PhotonicState,
    Polarization,
    WComponentSet,
    all_basis_states,
    complement,
    make_product_state,
    make_w_state,
    state_from_jsonable,
    state_to_jsonable,
    w_components,
)

__version__ = "0.1.0"

__all__ = [
    "BasisState",
    "Branch",
    "CoefficientSet",
    "ConfusionMatrix",
    "DistinguishabilityReport",
    "KerrWError",
    "MeasurementOutcome",
    "NetworkTopology",
    "OccupationVector",
    "PBSNode",
    "PhaseRow",
    "PhaseTable",
    "PhotonicState",
    "Polarization",
    "ProbeModel",
    "ResourceLimitError",
    "SearchConfig",
    "SizeError",
    "UnsupportedError",
    "ValidationError",
    "WComponentSet",
    "all_basis_states",
    "branch_partition",
    "build_chain",
    "build_phase_table",
    "canonicalize_coefficients",
    "certify_admissible",
    "check_distinguishability",
    "classify",
    "complement",
    "confusion_matrix",
    "error_probability",
    "expected_x",
    "find_coefficients",
    "make_product_state",
    "make_w_state",
    "measure_collapse",
    "min_adjacent_gap",
    "minimal_coefficients",
    "occupations_closed_form",
    "preset_coefficients",
    "roundtrip_identity",
    "route_basis",
    "sample_x",
    "state_from_jsonable",
    "state_to_jsonable",
    "sweep_occupations",
    "sweep_to_csv",
    "total_phase",
    "w_components",
    "worst_pair_error",
]
