"""Exception taxonomy shared by all modules.

Every error carries a short machine-readable ``taxonomy`` tag which the CLI
prints on stderr so shell pipelines can branch on the failure kind.
"""


class QuasiAnalyticError(Exception):
    taxonomy = "error"


class DomainError(QuasiAnalyticError, ValueError):
    """An input value is outside the mathematical domain of the operation."""

    taxonomy = "domain-error"


class SizeError(QuasiAnalyticError, ValueError):
    """Too few (or too many) entries for the operation to make sense."""

    taxonomy = "size-error"


class OrderError(QuasiAnalyticError, ValueError):
    """A derivative/truncation order is out of range."""

    taxonomy = "order-error"


class PreconditionError(QuasiAnalyticError, ValueError):
    """A stated precondition of the operation is violated."""

    taxonomy = "precondition-error"


class UnknownNameError(QuasiAnalyticError, KeyError):
    """A catalog lookup failed."""

    taxonomy = "lookup-error"


class SchemaError(QuasiAnalyticError, ValueError):
    """JSON input does not match the expected schema."""

    taxonomy = "schema-error"
