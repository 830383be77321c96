"""Exception hierarchy shared by every module."""


class MetafusionError(Exception):
    pass


class InputError(MetafusionError, ValueError):
    """Malformed or out-of-range user input."""


class ContractViolation(MetafusionError):
    """A documented precondition of an operation does not hold."""


class OrderCapExceeded(MetafusionError):
    pass


class NotMetacyclicError(MetafusionError):
    pass


class VerificationFailure(MetafusionError):
    """An exhaustive check found a counterexample. Should never happen."""
