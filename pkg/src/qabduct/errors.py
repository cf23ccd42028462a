"""Exception hierarchy."""


class QabductError(Exception):
    """Base class for all library errors."""


class InvalidInput(QabductError, ValueError):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ArityMismatch(InvalidInput):
    pass


class UnsafeQuery(InvalidInput):
    pass


class InvalidTBox(InvalidInput):
    pass


class NotAnExplanation(QabductError):
    pass


class NotAbducible(QabductError):
    pass


class FunctionalityConflict(QabductError):
    """A construction would specialize a functional role."""


class RestrictedSignature(QabductError):
    pass


class Inconsistent(QabductError):
    pass


class BudgetTooLarge(QabductError):
    pass


class TooLarge(QabductError):
    pass


class PreconditionViolated(QabductError):
    pass
