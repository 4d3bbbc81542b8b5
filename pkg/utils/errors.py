from typing import Dict, List, Optional


class LagrangeKitError(Exception):
    """Base class for all errors raised by the library."""


class InvalidInputError(LagrangeKitError, ValueError):
    """Raised when an argument violates a precondition (empty sets, bad radii, ...)."""


class InvalidSpecError(LagrangeKitError, ValueError):
    """Raised when a kernel specification violates its invariants."""


class UnsupportedError(LagrangeKitError, ValueError):
    """Raised when a requested smoothness order or option is not supported."""


class NumericalError(LagrangeKitError):
    """Base class for numerical failures (singular or ill-posed systems, failed fits)."""


class NonUnisolventError(NumericalError):
    """Raised when a point set is not unisolvent for the auxiliary polynomial space."""


class SingularSystemError(NumericalError):
    """Raised when a collocation system cannot be factorized reliably."""


class InsufficientDataError(NumericalError):
    """Raised when a fit has too few usable samples."""


class FootprintError(NumericalError):
    """Aggregates per-footprint failures of a local basis build.

    Args:
        failures: Mapping from center index to the failure message.
    """

    def __init__(self, failures: Dict[int, str], message: Optional[str] = None):
        self.failures = dict(sorted(failures.items()))
        self.indices: List[int] = list(self.failures)
        if message is None:
            shown = ", ".join(str(i) for i in self.indices[:20])
            more = "" if len(self.indices) <= 20 else f" (+{len(self.indices) - 20} more)"
            first = next(iter(self.failures.values()), "")
            message = f"{len(self.indices)} footprint(s) failed at centers [{shown}]{more}: {first}"
        super().__init__(message)
