from .algebra import (
    PAULI,
    PAULI_TRIPLE,
    ObservableTriple,
    PauliSet,
    anticommutation_profile,
    build_R,
    r_squared_expansion,
)
from .config import FloorConfig, SampleConfig
from .matrix import (
    Observable,
    QuantumState,
    commutator,
    eig_hermitian,
    expectation,
    kron,
    operator_norm,
)
from .sampling import (
    ginibre_density,
    haar_pure,
    random_involutive_triple,
    random_separable,
)
from .saturation import SignPattern, appendix_state, saturating_partner
from .uncertainty import (
    UncertaintyAudit,
    audit_triple,
    center_triple,
    equalize_variances,
    robertson_check,
    variance,
)
from .witness import (
    FloorEstimate,
    Verdict,
    WitnessReport,
    estimate_variance_floor,
    expectation_witness,
    separable_mixture_audit,
    variance_witness,
)

__all__ = [
    "PAULI",
    "PAULI_TRIPLE",
    "FloorConfig",
    "FloorEstimate",
    "Observable",
    "ObservableTriple",
    "PauliSet",
    "QuantumState",
    "SampleConfig",
    "SignPattern",
    "UncertaintyAudit",
    "Verdict",
    "WitnessReport",
    "anticommutation_profile",
    "appendix_state",
    "audit_triple",
    "build_R",
    "center_triple",
    "commutator",
    "eig_hermitian",
    "equalize_variances",
    "estimate_variance_floor",
    "expectation",
    "expectation_witness",
    "ginibre_density",
    "haar_pure",
    "kron",
    "operator_norm",
    "r_squared_expansion",
    "random_involutive_triple",
    "random_separable",
    "robertson_check",
    "saturating_partner",
    "separable_mixture_audit",
    "variance",
    "variance_witness",
]
