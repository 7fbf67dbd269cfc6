"""
Exception hierarchy for the A-loop engine.
Every error raised on purpose by the library derives from LoopError so the
CLI can map it to exit code 2.
"""


class LoopError(Exception):
    """Base class for all domain errors."""


# ========== Table Errors ==========

class NotLatin(LoopError):
    """A row or column repeats a value."""


class NoNeutral(LoopError):
    """No two-sided identity element."""


class InvalidElement(LoopError):
    """Element index outside 0..n-1."""


class NotALoop(LoopError):
    """Input is expected to be a commutative A-loop and is not."""


class ParseError(LoopError):
    """Malformed table file."""

    def __init__(self, message: str, line: int = None, column: int = None):
        self.line = line
        self.column = column
        where = ''
        if line is not None:
            where = f' (line {line}' + (f', column {column})' if column is not None else ')')
        super().__init__(message + where)


# ========== Structure Errors ==========

class NotPowerAssociative(LoopError):
    """Element orders are undefined on this loop."""


class NotCommutative(LoopError):
    """Operation requires a commutative loop."""


class DegreeMismatch(LoopError):
    """Permutations or tables of different sizes were combined."""


class NotSubloop(LoopError):
    """Subset is not closed under multiplication."""


class NotNormal(LoopError):
    """Subloop is not invariant under the inner mappings."""


class SquaringNotBijective(LoopError):
    """Bruck associate needs unique square roots."""


# ========== Construction Errors ==========

class NotAbelianGroup(LoopError):
    """Base of G(f) must be an abelian group."""


class NotBijection(LoopError):
    """Map is not a permutation of the element set."""


class DimensionTooSmall(LoopError):
    """Trilinear family needs dimension at least 3."""


class HypothesisViolated(LoopError):
    """Trilinear form fails g(x,x+y,y) = g(y,x+y,x)."""


class OutOfRange(LoopError):
    """Residue outside 0..n-1."""


class NotGroupCocycle(LoopError):
    """Cocycle fails the group identity or symmetry."""


class InvalidParameters(LoopError):
    """Parameters outside the allowed range."""


class Infeasible(LoopError):
    """No loop exists with the requested parameters."""


class CatalogMissing(LoopError):
    """A stored catalog needed by the operation is absent."""


# ========== Isomorphism Errors ==========

class IsGroup(LoopError):
    """Criterion only applies to nonassociative loops."""


class NoWitness(LoopError):
    """No element satisfies the witness equation."""


class CNotInvertible(LoopError):
    """Third coordinate of the Terg map parameter must be nonzero."""


# ========== Enumeration Errors ==========

class OrbitSpaceTooLarge(LoopError):
    """Complement space too large to walk exhaustively."""


class UnsupportedOrder(LoopError):
    """No enumeration pipeline for this order."""


class UnsupportedPrime(LoopError):
    """p3 classification supports p in {2, 3, 5, 7}."""
