"""Exception types raised across the package."""


class RealCertError(Exception):
    """Base class for all errors raised by realcert."""


class SingularMatrix(RealCertError, ZeroDivisionError):
    pass


class SingularJacobian(SingularMatrix):
    """Df(x) has no inverse at the requested point."""


class NegativeInput(RealCertError, ValueError):
    pass


class DimensionMismatch(RealCertError, ValueError):
    pass


class DegreeZeroPolynomial(RealCertError, ValueError):
    pass


class StructureArithmetic(RealCertError, ValueError):
    """Block counts violate u <= m or m + (k+2l)q = u + (k+2l)w."""


class NotAnApproximateSolution(RealCertError):
    """The alpha test failed at the input point, so no reality claim can be made."""


class ParseError(RealCertError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.message = message
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
