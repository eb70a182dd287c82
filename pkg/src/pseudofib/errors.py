"""Exception types raised across the package."""


class ContractViolation(ValueError):
    """An operation was called with arguments outside its domain."""


class DegenerateSubspace(ContractViolation):
    """Gram-Schmidt ran into a span on which the metric is degenerate."""


class NullDirection(ContractViolation):
    """A construction needs g(X, X) != 0 but X is (numerically) null."""


class FibreMismatch(ContractViolation):
    """Two total-space points do not lie on the same fibre."""


class DegenerateKernel(RuntimeError):
    """A joint kernel contains no non-null vector within tolerance."""


class ClassificationContradiction(RuntimeError):
    """Numerically computed index data disagree with the dimension arithmetic."""
