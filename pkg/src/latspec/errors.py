"""Exception hierarchy shared across the package."""


class LatspecError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LatspecError):
    """Malformed or inconsistent user input (bad permutation, parse error, ...)."""


class SizeError(LatspecError):
    """A configured size cap (element count, subgroup count) was exceeded."""


class DomainError(LatspecError):
    """The operation is not defined for the given arguments."""


class NumericError(LatspecError):
    """A numerical routine failed to converge or lost accuracy."""


class ConsistencyError(LatspecError):
    """Two computation paths that must agree exactly did not."""
