"""Exception types shared across the package."""


class SmoothrootsError(Exception):
    """Base class for all errors raised by this package."""


# jet arithmetic

class MultiplicityTooLow(SmoothrootsError):
    """A jet was asked to shed more leading zero coefficients than it has."""


class OddMultiplicity(SmoothrootsError):
    """Square root of a jet vanishing to odd order."""


class NegativeLeading(SmoothrootsError):
    """Square root of a jet whose leading coefficient is negative."""


class FlatJet(SmoothrootsError):
    """Operation undefined on a jet with no nonzero stored coefficient."""


class ZeroConstantTerm(SmoothrootsError):
    """Reciprocal of a jet with zero constant term."""


# factoring

class ClusterAmbiguous(SmoothrootsError):
    """Root clustering is unstable at the requested tolerance."""


class ClustersOverlap(SmoothrootsError):
    """The two root clusters are not coprime at the base point."""


class NotARoot(SmoothrootsError):
    """Deflation was attempted at a value that is not a root."""


# solving

class RealityViolated(SmoothrootsError):
    """The all-roots-real hypothesis fails on the given curve."""


class TruncationExhausted(SmoothrootsError):
    """The recursion needs more t-orders than the truncation provides."""


# tracking

class NotRealRooted(SmoothrootsError):
    """A sampled polynomial has roots with non-negligible imaginary part."""


class WindowTooSmall(SmoothrootsError):
    """Not enough samples around a meet point to estimate its order."""


class NegativeValue(SmoothrootsError):
    """A sampled function that must be nonnegative dipped below zero."""


# eigenvalue curves

class HermitianViolation(SmoothrootsError):
    """A matrix curve is not hermitian as an exact identity in t."""


class NonHermitianSample(SmoothrootsError):
    """A sampled matrix is not hermitian within tolerance."""


class RankDrop(SmoothrootsError):
    """Kernel elimination rank changed across jet orders."""


class FlatRecursion(SmoothrootsError):
    """Eigenframe recursion ran out of t-orders before eigenvalues split."""


# corpus / cli

class UnknownCorpusEntry(SmoothrootsError):
    """Requested corpus generator does not exist."""


class InputError(SmoothrootsError):
    """Malformed user input (polynomial text, spec file, options)."""
