"""Exception hierarchy shared by every module of the package."""


class MouldError(Exception):
    """Base class for all errors raised by :mod:`moulds`."""


class PoleError(MouldError, ZeroDivisionError):
    """A denominator linear form vanishes at the evaluation point."""


class HigherPoleError(MouldError):
    """A term has a pole of order two or more in the residue variable."""


class NotInSpanError(MouldError):
    """A rational mould is not a combination of the permutational moulds."""


class OverlapError(MouldError, ValueError):
    """Two words that should be shuffled share a letter."""


class EmptyOperandError(MouldError, ValueError):
    """A dendriform half-product received an arity-0 operand."""


class InvalidInputError(MouldError, ValueError):
    """A combinatorial object violates its defining invariants."""


class NonInvertibleError(MouldError, ValueError):
    """A power series has no compositional inverse."""


class ParamError(MouldError, ValueError):
    """Inconsistent parameters passed to a mould constructor."""


class ParseError(MouldError, ValueError):
    """Malformed textual input; ``pos`` is the offending character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos
