"""Exception hierarchy shared by every module of the package."""


class X0ModelsError(Exception):
    """Base class for all errors raised by x0models."""


class InvalidInput(X0ModelsError, ValueError):
    """Arguments outside the documented domain of an operation."""


class UnsupportedLevel(X0ModelsError):
    """The level is outside the range the models are built for.

    Raised for levels not coprime to 6, for the levels 5, 7, 13, 25 and
    for requests at the primes 2 and 3.
    """


class GenusTooSmall(X0ModelsError):
    """The finite part needs g(X_0(N)) >= 2."""


class NoSolution(X0ModelsError, ArithmeticError):
    """A linear system that should be consistent turned out not to be."""


class ConsistencyError(X0ModelsError, AssertionError):
    """Two independent derivations of the same quantity disagree."""
