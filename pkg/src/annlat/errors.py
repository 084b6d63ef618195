"""Exception hierarchy; CLI exit codes hang off the ``exit_code`` attribute."""


class AnnlatError(Exception):
    exit_code = 1


class ParseError(AnnlatError, ValueError):
    exit_code = 2


class NoUnit(AnnlatError):
    """The generated product-closed span has no two-sided unit projection."""

    exit_code = 3


class NotPositive(AnnlatError, ValueError):
    exit_code = 4


class UnknownSuite(AnnlatError, KeyError):
    exit_code = 5


class DimensionMismatch(AnnlatError, ValueError):
    exit_code = 2


class NotInAlgebra(AnnlatError, ValueError):
    pass


class NotInSubalgebra(NotInAlgebra):
    pass


class SeedNotCommuting(AnnlatError, ValueError):
    pass


class AlgebraMismatch(AnnlatError, ValueError):
    pass


class NotAProjection(AnnlatError, ValueError):
    pass


class MalformedPoset(AnnlatError, ValueError):
    exit_code = 2


class NotOrthomodular(AnnlatError, ValueError):
    pass
