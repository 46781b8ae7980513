"""Exception hierarchy for contract violations.

Mathematical outcomes (refuted, inconclusive) are never raised; they are
returned as CheckOutcome data. Everything here signals misuse or a
resource ceiling.
"""


class IalgError(Exception):
    """Base class for all engine errors."""


class PosetMembershipError(IalgError, ValueError):
    """An index element does not belong to the poset."""


class PosetValidationError(IalgError, ValueError):
    """A finite explicit poset violates the order or directedness axioms."""


class DegreeMismatchError(IalgError, ValueError):
    """Degrees of composed elements or maps do not match."""


class PresentationError(IalgError, ValueError):
    """An algebra or module presentation is malformed."""


class StarGeneratorsUnavailable(IalgError):
    """No verified finite generating set of the diagonal tail is known."""


class CertificateError(IalgError):
    """A certificate failed to replay."""


class ResourceLimitError(IalgError):
    """A configured resource ceiling was exceeded.

    Attributes:
        limit: Name of the ceiling (window, dimension, paths).
        value: Observed size.
        ceiling: Configured maximum.
    """

    def __init__(self, limit: str, value: int, ceiling: int) -> None:
        super().__init__(f"{limit} limit exceeded: {value} > {ceiling}")
        self.limit = limit
        self.value = value
        self.ceiling = ceiling


class ParseError(IalgError):
    """A syntax or reference error in an .ialg input.

    Attributes:
        line: 1-based line number.
        column: 1-based column number.
        message: Human-readable diagnostic.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
