"""Exception types raised across the package."""


class DetGBError(Exception):
    pass


class InvalidOrder(DetGBError):
    pass


class ZeroPolynomial(DetGBError):
    pass


class FieldMismatch(DetGBError):
    pass


class NotReduced(DetGBError):
    pass


class BadIndex(DetGBError):
    pass


class OrderNotDiagonal(DetGBError):
    pass


class NotStandard(DetGBError):
    pass


class NotSquarefree(DetGBError):
    pass


class ParseError(DetGBError):
    pass


class UsageError(DetGBError):
    """Bad command-line or experiment specification."""


class SchemaMismatch(DetGBError):
    pass
