"""Exception hierarchy shared across the package.

The command-line front end maps these onto exit codes: schema/parse problems
are distinct from domain violations, which are distinct from resource caps.
"""


class CausetkitError(Exception):
    """Base class for all package-specific errors."""


class PosetStructureError(CausetkitError):
    """Inputs to poset construction do not resolve (unknown or duplicate ids)."""


class UnknownEventError(CausetkitError, KeyError):
    """A query referenced an event or chain id that the poset does not contain."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message.
        return Exception.__str__(self)


class CycleError(CausetkitError):
    """The combined ordering relation contains a directed cycle."""


class SchemaError(CausetkitError):
    """A poset document is malformed or carries an unsupported schema version."""


class UnquantifiableIntervalError(CausetkitError):
    """An interval endpoint lacks a projection required for quantification."""


class CoordinationUndecidableError(CausetkitError):
    """Projections needed to decide coordination are absent within the range."""


class CapExceededError(CausetkitError):
    """An enumeration would exceed the configured size cap."""


class BoundaryError(CausetkitError):
    """The propagating wavefront reached the edge of the allocated lattice."""
