class InvalidInput(ValueError):
    """Malformed graph, fault set or update."""


class EmptyGraph(InvalidInput):
    pass


class InvalidQuery(ValueError):
    """A query whose arguments violate its preconditions."""


class InternalInvariantError(RuntimeError):
    pass
