"""Exception types shared across the lab."""


class LabError(Exception):
    """Base class for all convlab errors."""


class ParseError(LabError):
    """Malformed poset DSL / JSON input."""


class DuplicateLabelError(ParseError):
    """An element name occurs twice in a poset description."""


class CycleError(LabError):
    """Transitive closure of the declared order violates antisymmetry."""


class NotT0Error(LabError):
    """A topology whose specialization preorder is not antisymmetric."""


class MinimalityError(LabError):
    """A subset-selection rule rejects a singleton or accepts the empty set."""


class CapExceededError(LabError):
    """A configured enumeration / size cap would be exceeded."""


class CofinalityError(LabError):
    """A candidate subnet map is not cofinal in the parent index."""


class DegenerateIndexError(LabError):
    """A net construction produced an empty index set."""
