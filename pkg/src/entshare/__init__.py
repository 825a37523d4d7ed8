"""Entanglement sharing schemes built from stabilizer codes.

A dealer keeps half of a maximally entangled state and encodes the other
half into a stabilizer code distributed over n shares. This package
classifies every subset of shares by its entanglement with the dealer,
verifies the correctable-erasure bound on distillable entanglement,
layers a classical key scheme on top, and probes what leaks to
unauthorized subsets through a teleportation channel.
"""

__version__ = "0.1.0"

from .codes import (
    BUILTIN_NAMES,
    StabilizerCode,
    ValidationReport,
    builtin,
    code_from_dict,
    code_to_dict,
    erasure_correctable,
    erasure_correctable_bruteforce,
    load_code,
)
from .entanglement import (
    Bipartition,
    SeparableEnsemble,
    basis_dephasing_decomposition,
    dealer_split,
    holevo_gap,
    is_ppt,
    is_product,
    negativity,
    partial_transpose,
    pauli_twirl,
    product_residual,
    verify_separable_decomposition,
)
from .errors import (
    AuthorizationError,
    CapacityError,
    CodeValidationError,
    DimensionMismatch,
    EntShareError,
    NumericalError,
    PauliFormatError,
    ShareCountError,
    ShareIntegrityError,
    UnknownCodeError,
    UnknownLabelError,
)
from .hybrid import (
    ClassicalShareSet,
    HybridReport,
    HybridSubsetView,
    PhaseKey,
    default_prime,
    hybrid_analyze,
    key_known_fidelity,
    key_twirl,
    phase_encrypt,
    recover_with_key,
    shamir_reconstruct,
    shamir_share,
    twirl_certificate,
    verify_shamir_secrecy,
)
from .pauli import DENSE_LIMIT, PauliString, iter_paulis, single
from .qrss import QRSSReport, TeleportOutcome, qrss_leakage_report, teleport
from .schemes import (
    EntanglementSharingScheme,
    SchemeReport,
    ShorAppendixReport,
    Status,
    SubsetClassification,
    Theorem1Verdict,
    Witnesses,
    build_scheme,
    certificate_for,
    classify_all,
    classify_subset,
    important_shares,
    petz_kraus_operators,
    recover,
    shor_class_ensemble,
    theorem1_check,
    verify_shor_appendix,
)
from .states import (
    DEFAULT_TOL,
    DensityMatrix,
    PureState,
    SystemLayout,
    Tolerances,
    bell,
    encode_dealer_mes,
    entropy,
    fidelity,
    mes,
    mutual_information,
    partial_trace,
    trace_distance,
)

__all__ = [
    "AuthorizationError",
    "BUILTIN_NAMES",
    "Bipartition",
    "CapacityError",
    "ClassicalShareSet",
    "CodeValidationError",
    "DEFAULT_TOL",
    "DENSE_LIMIT",
    "DensityMatrix",
    "DimensionMismatch",
    "EntShareError",
    "EntanglementSharingScheme",
    "HybridReport",
    "HybridSubsetView",
    "NumericalError",
    "PauliFormatError",
    "PauliString",
    "PhaseKey",
    "PureState",
    "QRSSReport",
    "SchemeReport",
    "SeparableEnsemble",
    "ShareCountError",
    "ShareIntegrityError",
    "ShorAppendixReport",
    "StabilizerCode",
    "Status",
    "SubsetClassification",
    "SystemLayout",
    "TeleportOutcome",
    "Theorem1Verdict",
    "Tolerances",
    "UnknownCodeError",
    "UnknownLabelError",
    "ValidationReport",
    "Witnesses",
    "basis_dephasing_decomposition",
    "bell",
    "build_scheme",
    "builtin",
    "certificate_for",
    "classify_all",
    "classify_subset",
    "code_from_dict",
    "code_to_dict",
    "dealer_split",
    "default_prime",
    "encode_dealer_mes",
    "entropy",
    "erasure_correctable",
    "erasure_correctable_bruteforce",
    "fidelity",
    "holevo_gap",
    "hybrid_analyze",
    "important_shares",
    "is_ppt",
    "is_product",
    "iter_paulis",
    "key_known_fidelity",
    "key_twirl",
    "load_code",
    "mes",
    "mutual_information",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "pauli_twirl",
    "petz_kraus_operators",
    "phase_encrypt",
    "product_residual",
    "qrss_leakage_report",
    "recover",
    "recover_with_key",
    "shamir_reconstruct",
    "shamir_share",
    "shor_class_ensemble",
    "single",
    "teleport",
    "theorem1_check",
    "trace_distance",
    "twirl_certificate",
    "verify_separable_decomposition",
    "verify_shamir_secrecy",
    "verify_shor_appendix",
]
