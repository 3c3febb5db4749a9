"""Exception hierarchy shared by the lattice, elliptic and rational layers."""


class DoubleDecompError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(DoubleDecompError, ValueError):
    pass


class NotPrime(DoubleDecompError, ValueError):
    pass


class InvalidPath(DoubleDecompError, ValueError):
    pass


class NonConvergent(DoubleDecompError, ArithmeticError):
    pass


class PoleProximity(DoubleDecompError, ArithmeticError):
    pass


class OutOfDomain(DoubleDecompError, ValueError):
    pass


class DegenerateSampling(DoubleDecompError, ArithmeticError):
    pass


class DegreeCollapse(DoubleDecompError, ArithmeticError):
    pass


class EqualSublattices(DoubleDecompError, ValueError):
    pass
