"""Exception hierarchy shared by all biham modules."""


class BihamError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(BihamError):
    """Malformed input: bad syntax, unknown variable, non-skew table."""


class SingularInversion(BihamError):
    """Series inversion requested with vanishing linear coefficient."""


class PoleAtPoint(BihamError):
    """A rational coefficient was evaluated on the zero locus of its denominator."""


class NotPureKronecker(BihamError):
    """Kernel families exist only for pencils without Jordan blocks."""


class NotSkewCanonical(BihamError):
    """Elementary divisors of a skew pencil must pair up; odd multiplicity means corrupted input."""


class InternalInconsistency(BihamError):
    """Two certified computation paths disagree; indicates a bug, not bad input."""


class SamplingExhausted(BihamError):
    """Rejection sampling failed to find a generic point within its budget."""


class UnsupportedPeriod(BihamError):
    """Periodic lattices need period >= 6 (k >= 3); the k = 2 bracket table is contradictory."""


class DegenerateFunction(BihamError):
    """The defining function of a 3-dimensional model has an identically zero partial."""


class DegenerateModel(BihamError):
    """The excluded locus of a constructed model covers its whole domain."""


class NotRegular(BihamError):
    """The shift vector of an argument-shift model must have nonzero quadratic invariant."""


class NotNormalizable(BihamError):
    """Normal-form reduction needs nonvanishing first partials at the base point."""


class ScalingUnfixed(BihamError):
    """Normal form determined only up to the one-parameter scaling group."""


class SingularODE(BihamError):
    """The characteristic ODE hit a zero of the denominator partial along the path."""
