"""Weight combinatorics for partial weight one mod p Hilbert modular forms."""

from .errors import (
    DomainError,
    InapplicableError,
    InvariantViolation,
    StripLimitExceeded,
    StructureError,
    WeightError,
)
from .weights import (
    Embedding,
    PlaceStructure,
    Weight,
    basis_vector,
    frobenius,
    frobenius_inverse,
    in_minimal_cone,
    is_regular,
)
from .operators import (
    apply_hasse,
    hasse_weight,
    strict_shifted_cone,
    strippable_set,
    theta_shift,
    unapply_hasse,
)
from .transfer import TransferResult, compute_transfer, hasse_set, theta_set
from .descent import (
    ResidualCase,
    StripTrace,
    classify_residual,
    expected_pattern,
    greedy_strip,
    intermediate_weight,
    verify_roundtrip,
)
from .inertial import (
    CharacterShape,
    ExponentVector,
    forbidden_shapes,
    residue,
    shape_exclusion_violations,
    string_decompose,
)
from .hypotheses import HypothesisReport, Status, check_hypotheses

__version__ = "0.1.0"
