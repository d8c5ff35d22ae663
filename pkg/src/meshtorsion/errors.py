"""Exception hierarchy shared by all modules."""


class MeshTorsionError(Exception):
    """Base class for domain errors raised by the package."""


class OrderOne(MeshTorsionError, ValueError):
    """Evaluation at a first root of unity, where 1 - u has no inverse."""


class SingularEvaluation(MeshTorsionError, ValueError):
    """Numeric evaluation at a point where 1 - u vanishes."""


class NotAUnit(MeshTorsionError, ValueError):
    pass


class IndexOutOfRange(MeshTorsionError, IndexError):
    pass


class PreconditionViolated(MeshTorsionError, ValueError):
    pass


class NotAcyclic(MeshTorsionError, ValueError):
    def __init__(self, degree, homology_rank):
        self.degree = degree
        self.homology_rank = homology_rank
        super().__init__(
            f"complex is not acyclic: homology of rank {homology_rank} in degree {degree}"
        )


class RankMismatch(MeshTorsionError, ValueError):
    pass


class NonUnitPivot(MeshTorsionError, ValueError):
    """Elimination over a non-field ring needed a pivot that is not a unit."""


class UndefinedTorsion(MeshTorsionError):
    pass


class NoValidCutEdge(MeshTorsionError):
    pass


class InconsistentSystem(MeshTorsionError):
    pass


class NotASpanningTree(MeshTorsionError, ValueError):
    pass


class InvalidTolerance(MeshTorsionError, ValueError):
    pass


class NonIntegerTotal(MeshTorsionError, ArithmeticError):
    pass


class GraphSyntaxError(MeshTorsionError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, column {col}: {message}")


class GraphSemanticError(MeshTorsionError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
