"""Exception and warning types shared across searchlab."""


class SearchLabError(Exception):
    """Base class for searchlab errors."""


class InvalidStateError(SearchLabError, ValueError):
    """A state vector cannot be normalized (zero vector, non-finite entries)."""


class NotHermitianError(SearchLabError, ValueError):
    pass


class DomainError(SearchLabError, ValueError):
    """A parameter (schedule value, time) lies outside its admissible range."""


class NormDriftError(SearchLabError, ArithmeticError):
    """Integrated state norm drifted too far; the step is too coarse."""


class ConvergenceError(SearchLabError, ArithmeticError):
    pass


class NonCanonicalWarning(UserWarning):
    """Jumping rate differs from 1/N, so the walk is not the standard search walk."""


class DegenerateGapWarning(UserWarning):
    """Equal ground and excited energies: the synthesized operator is a multiple of I."""
