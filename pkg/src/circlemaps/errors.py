"""Exception hierarchy shared by every module."""


class CircleMapError(Exception):
    """Base class for all package errors."""


class ValidationError(CircleMapError, ValueError):
    """Malformed input: a map that is not a monotone lift, a bad fraction,
    a violated precondition."""


class BudgetError(CircleMapError, RuntimeError):
    """An iteration, denominator or enumeration budget was exhausted."""
