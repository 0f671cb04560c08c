"""Exception types shared across the package."""


class QuiverhomError(Exception):
    """Base class for all library errors."""


class ParseError(QuiverhomError):
    """Malformed input file or JSON payload."""


class FieldUnsupported(QuiverhomError):
    """Operation requires characteristic 0 or a prime above the floor."""


class NonAdmissible(QuiverhomError):
    """Path enumeration exceeded the cap: the relation ideal is not admissible."""


class BadKupisch(QuiverhomError):
    """Kupisch series violates the Nakayama admissibility recurrence."""


class NotMonomialRealizable(QuiverhomError):
    """Bimodule cannot be presented by connecting arrows with monomial relations."""


class NotNakayama(QuiverhomError):
    """Operation is only available for Nakayama (uniserial) algebras."""


class ZeroModule(QuiverhomError):
    """The zero module was passed where a nonzero module is required."""


class ZeroComplex(QuiverhomError):
    """Complex has no nonzero cohomology."""


class NotPerfect(QuiverhomError):
    """Complex has no bounded projective resolution."""


class DepthLimitExceeded(QuiverhomError):
    """A resolution had to be extended beyond the configured depth limit."""


class PhiUndecided(QuiverhomError):
    """Syzygy class universe did not close, so phi has no exactness certificate."""
