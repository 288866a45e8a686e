"""Exception hierarchy shared by all modules."""


class ReidemeisterError(Exception):
    """Base class for every error raised by this package."""


class NonInvertible(ReidemeisterError):
    pass


class InfiniteCokernel(ReidemeisterError):
    pass


class IncompatibleTwist(ReidemeisterError):
    pass


class DegenerateLattice(ReidemeisterError):
    pass


class UnsupportedTwist(ReidemeisterError):
    pass


class UnsupportedMatrix(ReidemeisterError):
    pass


class DomainError(ReidemeisterError, ValueError):
    pass


class InfiniteReidemeister(ReidemeisterError):
    def __init__(self, power: int):
        super().__init__(f"R(F^{power}) is infinite: det(I - F^{power}) = 0")
        self.power = power


class NotInvariant(ReidemeisterError):
    pass


class ValidationFailure(ReidemeisterError):
    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(ReidemeisterError, ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position
