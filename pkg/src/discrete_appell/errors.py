"""Exception types raised by the evaluators and checkers."""


class DiscreteAppellError(Exception):
    """Base class for all package errors."""


class PoleError(DiscreteAppellError, ValueError):
    """A gamma/Pochhammer argument or lower series parameter sits on a pole."""


class DivergenceError(DiscreteAppellError, ArithmeticError):
    """The double series diverges (or is outside its convergence region)."""


class ConfigError(DiscreteAppellError, ValueError):
    """Invalid summation, quadrature or runner configuration."""


class DomainError(DiscreteAppellError, ValueError):
    """An operator visited a point where the operand cannot be evaluated."""


class ConstraintError(DiscreteAppellError, ValueError):
    """Positivity constraints of an integral representation are violated."""


class PreconditionError(DiscreteAppellError, ValueError):
    """An identity check was requested outside the identity's hypotheses."""
