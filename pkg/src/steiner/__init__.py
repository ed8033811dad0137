"""Steiner triple systems, the doubling construction, and bicolorings."""

from .coloring import (
    DEFAULT_BUDGET,
    ColoringError,
    ColorPartition,
    SpectrumResult,
    check_bicoloring,
    chromatic_spectrum,
    color_profile,
)
from .constructions import (
    ConstructionError,
    OneFactorization,
    bose,
    cyclic_sts,
    doubling,
    round_robin_factorization,
    skolem,
    validate_one_factorization,
)
from .corpus import CorpusEntry, CorpusError, load_entry, verify_all, verify_table
from .design import (
    MalformedInputError,
    TripleSystem,
    VerificationReport,
    build_pair_index,
    is_admissible,
    sts_block_count,
    validate_sts,
)
from .extension import (
    FOUND,
    INFEASIBLE,
    UNKNOWN,
    ExtensionCertificate,
    ExtensionError,
    ExtensionProblem,
    ExtensionResult,
    ReconstructResult,
    allowed_edges,
    reconstruct_base,
    search_extension,
    verify_extension,
)
from .formats import (
    FormatError,
    format_classes,
    format_factorization,
    format_sts,
    parse_classes,
    parse_factorization,
    parse_sts,
)

__all__ = [name for name in dir() if not name.startswith("_")]
