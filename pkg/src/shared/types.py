"""Shared types, enums, and constants used across the engine."""

import enum


class FieldKind(str, enum.Enum):
    """Exact coefficient field."""

    RATIONALS = "Q"
    PRIME = "Fp"


class PosetKind(str, enum.Enum):
    """Shape of an index poset."""

    INTEGER_LATTICE = "zlattice"
    FINITE_EXPLICIT = "finite"
    PRODUCT = "product"


class AlgebraKind(str, enum.Enum):
    """How an indexed algebra is presented."""

    INVARIANT = "invariant"
    EXPLICIT = "explicit"


class Verdict(str, enum.Enum):
    """Result of a finiteness check."""

    VERIFIED = "verified"
    VERIFIED_BY_CRITERION = "verified_by_criterion"
    REFUTED = "refuted"
    INCONCLUSIVE = "inconclusive"


class InconclusiveReason(str, enum.Enum):
    """Why a semi-decision stopped without a verdict."""

    GROWTH_EVIDENCE = "growth_evidence"
    WINDOW_EXHAUSTED = "window_exhausted"
    PROBE_UNSTABLE = "probe_unstable"
    NOT_APPLICABLE = "not_applicable"
    SKIPPED = "skipped"


class SequenceCondition(str, enum.Enum):
    """Conditions checked on a sampled module sequence."""

    PROJECTIVE = "P"
    COHERENT = "C"
    AMPLE = "A"


class ExitCode(enum.IntEnum):
    """Process exit codes of the ialg binary."""

    OK = 0
    USAGE = 1
    REFUTED = 2
    INCONCLUSIVE = 3
    RESOURCE_LIMIT = 4


REPORT_SCHEMA_VERSION = 1
