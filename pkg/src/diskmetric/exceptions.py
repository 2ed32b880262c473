"""Exception hierarchy shared by every diskmetric module."""


class DiskMetricError(Exception):
    """Base class for all errors raised by diskmetric."""


class DomainError(DiskMetricError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidInterval(DiskMetricError, ValueError):
    """Integration bounds are not strictly increasing."""


class WindowCoversInterval(DiskMetricError, ValueError):
    """An excluded window removes the whole integration interval."""


class NonConvergence(DiskMetricError, ArithmeticError):
    """A numerical procedure stopped before reaching its tolerance.

    The partial result, when one exists, is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DegenerateInput(DiskMetricError, ValueError):
    """Inputs do not determine the requested object (e.g. coincident points)."""


class OffChord(DiskMetricError, ValueError):
    """A point does not lie on the chord it was paired with."""


class OutsideDomain(DiskMetricError, ValueError):
    """A point is not strictly inside a convex domain."""


class DegenerateBoundary(DiskMetricError, ArithmeticError):
    """A line/boundary intersection could not be resolved reliably."""
