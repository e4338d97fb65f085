"""Exception hierarchy.

``InputError`` marks malformed input (bad JSON, wrong schema); everything
else derives from ``DomainError`` and signals a mathematically meaningful
refusal on well-formed data.  The CLI maps ``InputError`` to exit code 2
and ``DomainError`` to exit code 1.
"""


class TdeformError(Exception):
    pass


class InputError(TdeformError):
    """Input could not be parsed or fails schema validation."""


class DomainError(TdeformError):
    """Well-formed input that the requested operation rejects."""


class RankMismatch(DomainError):
    pass


class EmptyInput(DomainError):
    """Operation is undefined on the empty polyhedron."""


class UnboundedBelow(DomainError):
    """The linear functional has no minimum on the polyhedron."""


class NotAVertex(DomainError):
    pass


class NonPointedTail(DomainError):
    """Polyhedra must have pointed tail cones."""


class AffineLocus(DomainError):
    """Operation requires a complete locus but a coefficient is empty."""


class CompleteLocus(DomainError):
    """Operation requires an affine locus but every coefficient is nonempty."""


class FaceConditionViolation(DomainError):
    """A pairwise intersection of polyhedral divisors is not a common face."""

    def __init__(self, i, j, message=""):
        self.pair = (i, j)
        super().__init__(message or f"divisors {i} and {j} do not intersect in a common face")


class NotSmooth(DomainError):
    pass


class NotComplete(DomainError):
    pass


class AssumptionViolated(DomainError):
    """A standing hypothesis of the cocycle formulas fails for this input."""


class NoTrivialSummand(DomainError):
    """No column of a decomposition row is a lattice translate of the tail cone."""

    def __init__(self, row, message=""):
        self.row = row
        super().__init__(message or f"row {row} has no summand that is a lattice translate of the tail")


class DecompositionError(DomainError):
    """A Minkowski decomposition violates one of its structural invariants."""


class NotSupported(DomainError):
    pass


class IrrationalPoint(DomainError):
    """A fiber would be supported at points that are not rational."""
