"""Exception hierarchy shared by every module."""


class EdgeGeomError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class PoleError(EdgeGeomError):
    pass


class DivisionByZero(EdgeGeomError, ZeroDivisionError):
    pass


class NotInSubfield(EdgeGeomError):
    pass


class DegenerateStars(EdgeGeomError):
    pass


class IndexOutOfRange(EdgeGeomError, IndexError):
    pass


class WrongParity(EdgeGeomError):
    pass


class ParallelLines(EdgeGeomError):
    pass


class SingularHit(EdgeGeomError):
    def __init__(self, step, reason="singular"):
        super().__init__(f"orbit hit the singular set at step {step} ({reason})")
        self.step = step
        self.reason = reason


class TooShort(EdgeGeomError):
    pass


class DomainError(EdgeGeomError):
    pass


class IoError(EdgeGeomError, OSError):
    pass
