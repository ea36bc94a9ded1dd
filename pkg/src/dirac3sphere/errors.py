"""Exception and warning types shared across the package."""


class Dirac3SphereError(Exception):
    """Base class for package-specific failures."""


class DomainError(Dirac3SphereError, ValueError):
    """Metric parameters outside the open positive octant."""


class UnsupportedLevelError(Dirac3SphereError, ValueError):
    """A closed form was requested at a level it does not cover."""


class ConsistencyError(Dirac3SphereError):
    """Two supposedly equivalent computation routes disagreed.

    Signals an internal bug (or corrupted input), never a property of the
    metric under study.
    """


class CertificationError(Dirac3SphereError):
    """A strict inequality in the verification chain failed."""


class UncertifiableError(Dirac3SphereError):
    """Certification requested outside the positive scalar curvature regime."""


class InconsistentInputError(Dirac3SphereError, ValueError):
    """Reconstruction data does not correspond to any metric."""


class WrongRegimeError(Dirac3SphereError, ValueError):
    """Reconstruction route does not apply to the given curvature regime."""


class TruncationWarning(UserWarning):
    """A level cutoff is too small for the requested quantity."""
