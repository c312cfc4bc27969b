"""Edge geometry of regular polygons under outer billiards and related maps."""

__version__ = "0.1.0"

from .errors import (DegenerateStars, DivisionByZero, DomainError, EdgeGeomError, IndexOutOfRange,
                     IoError, NotInSubfield, ParallelLines, PoleError, SingularHit, TooShort,
                     WrongParity)
