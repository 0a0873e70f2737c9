"""Exception hierarchy shared by the library and the CLI."""


class DomainError(ValueError):
    """Input outside the domain of an operation (CLI exit code 1)."""


class DegenerateStateError(DomainError):
    """A superposition whose norm vanishes cannot be normalized."""


class InvalidDensityError(DomainError):
    """Matrix is not a valid density operator within tolerance."""


class NumericError(DomainError, ArithmeticError):
    """A quantity that is nonnegative in exact arithmetic came out negative."""


class CrossCheckError(RuntimeError):
    """Analytic and Fock backends disagree beyond tolerance (CLI exit code 2)."""
