"""Exception types shared across the package."""


class CentalgError(Exception):
    """Base class for all library errors."""


class DegreeMismatch(CentalgError):
    """Permutations of different degrees were combined."""


class ClosureExceedsBound(CentalgError):
    """Group closure enumeration passed the configured element bound."""


class NotASubgroup(CentalgError):
    """An operation required H <= G but H is not contained in G."""


class NotTransitive(CentalgError):
    """An operation required a transitive action."""


class DivisionByZero(CentalgError):
    """Exact division by zero."""


class PrecisionInsufficient(CentalgError):
    """The numeric tier could not separate quantities at the working precision."""


class SchemaError(CentalgError):
    """A data file does not match its expected schema."""


class OrthogonalityFailure(CentalgError):
    """An imported character table fails the orthogonality relations."""


class GroupTooLarge(CentalgError):
    """The group exceeds the bound supported by this operation."""


class InvalidCocycle(CentalgError):
    """A two-cocycle fails normalization or the cocycle identity."""


class ProjectionMismatch(CentalgError):
    """Permutation parts of a monomial cover do not generate the claimed base group."""


class OrientabilityViolation(CentalgError):
    """The entry fill rule met an inconsistent assignment on a non-orientable orbital."""


class NotCommutative(CentalgError):
    """The centraliser algebra is not commutative."""


class MissingConstituentRows(CentalgError):
    """The group character table lacks rows for some irreducible constituent."""


class EigenvalueCollision(CentalgError):
    """A random matrix combination failed to separate the common eigenspaces."""


class ResourceBudgetExceeded(CentalgError):
    """A Groebner basis computation hit its pair or degree budget."""


class UnresolvedFactor(CentalgError):
    """A univariate factor could not be certified irreducible or split further."""


class NotConstantRowSum(CentalgError):
    """A matrix expected to have constant row and column sums does not."""


class UnsupportedFieldSize(CentalgError):
    """A construction is not implemented for this field size."""


class CoverUnavailable(CentalgError):
    """No monomial cover is available for the requested group."""


class MismatchAgainstExpected(CentalgError):
    """A reproduction run differs from the bundled expected output."""
