"""Exception types shared across the package."""


class QTwistError(Exception):
    """Base class for every error raised by qtwist."""


class DivisionByZero(QTwistError, ZeroDivisionError):
    pass


class PoleAtPoint(QTwistError, ValueError):
    pass


class ScalarParseError(QTwistError, ValueError):
    pass


class DimensionMismatch(QTwistError, ValueError):
    pass


class IndexOutOfRange(QTwistError, IndexError):
    pass


class DegreeTooLarge(QTwistError, ValueError):
    pass


class AlphabetMismatch(QTwistError, ValueError):
    pass


class NotAnAutomorphism(QTwistError, ValueError):
    pass


class NotACharacter(QTwistError, ValueError):
    pass


class InvalidPair(QTwistError, ValueError):
    """Raised when a matrix does not define a twisting pair.

    ``relation_index`` is the position (in the FRT relation list) of the
    first relation the matrix fails to annihilate, or ``None`` when the
    matrix is singular.
    """

    def __init__(self, message, relation_index=None):
        super().__init__(message)
        self.relation_index = relation_index


class CaseMismatch(QTwistError, ValueError):
    pass


class ZeroParameter(QTwistError, ValueError):
    pass


class FormatError(QTwistError, ValueError):
    """A malformed interchange document; ``where`` names the offending field."""

    def __init__(self, message, where=None):
        if where:
            message = f"{where}: {message}"
        super().__init__(message)
        self.where = where
