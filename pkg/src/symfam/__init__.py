"""Entanglement families of symmetric multiqubit states.

Classify pure symmetric states by their Majorana constellations, navigate
the partition hierarchy of families, build witness operators separating
them, decompose mixed states over separable product-projector bases, and
sample states inside a prescribed family.
"""

from ._validation import ConditioningError, DomainError, NumericalError
from .estimators import FamilyClassifier, SeparableBasisTransformer, WitnessDetector
from .families import (
    FamilyGraph,
    canonical_partition,
    classify_pure,
    closure,
    descends,
    diversity,
    enumerate_partitions,
    format_partition,
    hasse_graph,
    parse_partition,
    to_dot,
)
from .majorana import from_constellation, to_constellation
from .sampling import (
    SamplingSpec,
    SphericalCap,
    UniformSphere,
    polarizer_mixture,
    random_symmetric_pure,
    sample_constellation,
    sample_mixed_in_family,
    sample_pure_in_family,
)
from .sepbasis import (
    OperatorIndex,
    SeparableBasis,
    build_basis,
    choose_points,
    decompose,
    f_coeffs,
    operator_indices,
    reconstruct,
    sigma_matrix,
)
from .states import (
    BlochPoint,
    Constellation,
    SymmetricDensityMatrix,
    SymmetricState,
    chordal_distance,
    dicke,
    ghz,
    maximally_mixed,
    mix,
    overlap,
    projector,
    tetrahedron_state,
    trace_distance,
)
from .witness import (
    OptimizerConfig,
    Witness,
    build_witness,
    evaluate,
    max_overlap,
    maximize_overlap,
    witness_battery,
)

__version__ = "0.1.0"

__all__ = [
    "BlochPoint",
    "ConditioningError",
    "Constellation",
    "DomainError",
    "FamilyClassifier",
    "FamilyGraph",
    "NumericalError",
    "OperatorIndex",
    "OptimizerConfig",
    "SamplingSpec",
    "SeparableBasis",
    "SeparableBasisTransformer",
    "SphericalCap",
    "SymmetricDensityMatrix",
    "SymmetricState",
    "UniformSphere",
    "Witness",
    "WitnessDetector",
    "build_basis",
    "build_witness",
    "canonical_partition",
    "choose_points",
    "chordal_distance",
    "classify_pure",
    "closure",
    "decompose",
    "descends",
    "dicke",
    "diversity",
    "enumerate_partitions",
    "evaluate",
    "f_coeffs",
    "format_partition",
    "from_constellation",
    "ghz",
    "hasse_graph",
    "max_overlap",
    "maximally_mixed",
    "maximize_overlap",
    "mix",
    "operator_indices",
    "overlap",
    "parse_partition",
    "polarizer_mixture",
    "projector",
    "random_symmetric_pure",
    "reconstruct",
    "sample_constellation",
    "sample_mixed_in_family",
    "sample_pure_in_family",
    "sigma_matrix",
    "tetrahedron_state",
    "to_constellation",
    "to_dot",
    "trace_distance",
    "witness_battery",
]
