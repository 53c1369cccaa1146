"""Exception types raised across the package."""


class SlashHomError(Exception):
    """Base class for all package errors."""


class NotPrimeError(SlashHomError, ValueError):
    pass


class AmbientMismatch(SlashHomError, ValueError):
    """Two subspaces (or a vector and a subspace) live in different spaces."""


class NotASubspace(SlashHomError, ValueError):
    pass


class GroundSetTooLarge(SlashHomError, ValueError):
    pass


class DegreeUnderflow(SlashHomError, ValueError):
    pass


class BadStandardnessLevel(SlashHomError, ValueError):
    pass


class NotStandard(SlashHomError, ValueError):
    pass


class NotAlmostStandard(SlashHomError, ValueError):
    pass


class WindowViolation(SlashHomError, ValueError):
    """(n, k, p) lies outside the range n - (p-1) < 2k <= n that an operation needs."""


class NoDescent(SlashHomError, ValueError):
    pass


class NonMember(SlashHomError, ValueError):
    pass


class NotBadEntry(SlashHomError, ValueError):
    pass


class EmptyBasis(SlashHomError, ValueError):
    pass


class StraighteningDiverged(SlashHomError, RuntimeError):
    """The straightening queue exceeded its step cap."""


class NotAPComplex(SlashHomError, ValueError):
    """Some p consecutive differentials fail to compose to zero."""
