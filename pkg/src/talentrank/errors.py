"""Exception types shared across the package.

Everything raised for invalid inputs derives from :class:`TalentRankError`,
so callers (and the CLI) can separate validation failures from genuine I/O
problems, which surface as ordinary ``OSError``.
"""


class TalentRankError(ValueError):
    """Base class for all validation and contract errors."""


class SchemaError(TalentRankError):
    """A file header or configuration document is malformed or incomplete."""


class RowError(TalentRankError):
    """A data row failed to parse or violates a field invariant."""


class EncodingError(TalentRankError):
    """A categorical value cannot be encoded under the active policy."""


class DegenerateColumnError(TalentRankError):
    """A column is all zero or has zero variance where variation is required."""


class DegenerateMatrixError(TalentRankError):
    """All candidates are identical in every criterion; ranking is undefined."""


class ShapeError(TalentRankError):
    """Array dimensions do not line up."""


class SingleClassError(TalentRankError):
    """An operation that needs both classes saw only one."""


class DomainError(TalentRankError):
    """A numeric precondition fails (empty input, zero norm, constant reference, ...)."""


class ContractError(TalentRankError):
    """A score file or other interchange document violates its contract."""
