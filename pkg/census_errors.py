"""
Error types for the triangulation census tools.

Every failure the library can signal is a CensusError subclass, so callers
(the CLI, the suite runner) can catch one type and report the message.
"""

from typing import Any, Optional


class CensusError(Exception):
    """Base class for all census errors"""


# Embedding / validation

class EmbeddingError(CensusError):
    """The rotation system does not describe a valid embedding"""


class NotSymmetric(EmbeddingError):
    """u lists v but v does not list u"""


class NotSimple(EmbeddingError):
    """Loop or repeated neighbour in a rotation"""


class NotTriangular(EmbeddingError):
    """Some face has length other than 3"""


class EulerViolation(EmbeddingError):
    """Face count disagrees with Euler's formula for the sphere"""


class NotThreeConnected(EmbeddingError):
    """A 1- or 2-vertex cut was found"""


class FaceNotFound(CensusError):
    """The requested face is not a face of the graph"""


class TooSmall(CensusError):
    """Parameter below the smallest admissible size"""


class NotFourConnected(CensusError):
    """Operation requires a 4-connected triangulation"""


# Dual graphs

class DisconnectedSelection(CensusError):
    """Selected dual vertices do not induce a connected subgraph"""


class Disconnected(CensusError):
    """Graph is not connected"""


class NotACycle(CensusError):
    """Edge set does not form a single cycle"""


# Enumeration

class BudgetExceeded(CensusError):
    """Enumeration hit its partial-path budget"""

    def __init__(self, budget: int, explored: int):
        super().__init__(f"enumeration budget {budget} exceeded ({explored} partial paths)")
        self.budget = budget
        self.explored = explored

    def __reduce__(self):
        return (type(self), (self.budget, self.explored))


class BadPath(CensusError):
    """Prescribed path is not a simple path of the graph"""


# Proof procedures

class BadAnchor(CensusError):
    """Anchor vertices are not consecutive on the outer cycle"""


class StuckDeletion(CensusError):
    """No removable dual vertex although the procedure must progress"""


class NonTermination(CensusError):
    """Deletion procedure exceeded its iteration guard"""


class ProcedureFault(CensusError):
    """A postcondition of a constructive procedure failed"""


class OutOfRange(CensusError):
    """Cycle length outside the admissible range"""


class BadAssignment(CensusError):
    """Apex assignment names a corner that is not on its triangle"""


# Counting bases

class AxiomViolation(CensusError):
    """A counting-base axiom failed; witness holds the offending objects"""

    def __init__(self, axiom: str, witness: Any):
        super().__init__(f"counting base axiom ({axiom}) violated: {witness}")
        self.axiom = axiom
        self.witness = witness

    def __reduce__(self):
        return (type(self), (self.axiom, self.witness))


class EmptyP(CensusError):
    """No edge set qualifies for the counting base"""


class EmptyFamily(CensusError):
    """Some P has no cycle in its family"""

    def __init__(self, path: Any, k: int):
        super().__init__(f"no {k}-cycle contains {path}")
        self.path = path
        self.k = k

    def __reduce__(self):
        return (type(self), (self.path, self.k))


# I/O

class ConfigError(CensusError):
    """Suite configuration is malformed"""


class ParseError(CensusError):
    """Input file could not be parsed"""

    def __init__(self, message: str, offset: Optional[int] = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset
