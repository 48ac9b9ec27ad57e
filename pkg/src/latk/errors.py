"""Exception taxonomy for latk."""


class LatkError(Exception):
    """Base class for all latk errors."""


class InputError(LatkError):
    """Malformed or inconsistent input data."""


class ParseError(InputError):
    """Positioned error in an input file."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EmptyLattice(LatkError):
    """The equation/congruence system has no integer solution."""


class EmptyModule(LatkError):
    """The polyhedron contains no lattice point."""


class NotPointed(LatkError):
    """Operation requires a pointed cone."""


class AlreadyPointed(LatkError):
    """pointed_quotient called on a cone that is already pointed."""


class NotFullDimensional(LatkError):
    """Operation requires a full-dimensional cone."""


class NotPositive(LatkError):
    """Operation requires a positive (pointed) monoid."""


class SingularSimplex(LatkError):
    """Simplex generators are linearly dependent."""


class NonPositiveDegree(LatkError):
    """Grading is not positive where it has to be."""


class NonPositiveRayDegree(NonPositiveDegree):
    """A free ray of a Stanley component has nonpositive degree."""


class NonPointedHomogenization(LatkError):
    """Level data is inconsistent with a pointed homogenized cone."""


class NotGraded(LatkError):
    """Series operation requested without a grading."""


class InexactDivision(LatkError):
    """Polynomial division left a remainder."""


class InternalError(LatkError):
    """Invariant violation; should be unreachable."""
