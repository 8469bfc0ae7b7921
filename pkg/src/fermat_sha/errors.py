"""Exception hierarchy shared by every module."""


class FermatShaError(Exception):
    """Base class for all errors raised by the package."""


class NotPrime(FermatShaError, ValueError):
    pass


class NotInvertible(FermatShaError, ArithmeticError):
    pass


class DivisibleByP(FermatShaError, ArithmeticError):
    pass


class InvalidTriple(FermatShaError, ValueError):
    pass


class NotNormalizable(FermatShaError, AssertionError):
    pass


class CapExceeded(FermatShaError, ValueError):
    pass


class IrregularPrime(FermatShaError, ValueError):
    pass


class SingularSystem(FermatShaError, ArithmeticError):
    pass


class InvalidDimension(FermatShaError, ValueError):
    pass


class CorruptCache(FermatShaError, IOError):
    pass
