"""Exception hierarchy shared by every module of the package."""


class StarPIError(Exception):
    """Base class for all errors raised by starpi."""


class DescriptorMismatch(StarPIError, TypeError):
    """Operands live over different fields."""


class DivisionByZero(StarPIError, ZeroDivisionError):
    pass


class InfiniteField(StarPIError, ValueError):
    """An operation that needs a finite field was given an infinite one."""


class UnsupportedField(StarPIError, ValueError):
    pass


class SymmetryViolation(StarPIError, ValueError):
    """A substitution maps a symmetric variable to a non-symmetric value
    (or a skew variable to a non-skew value)."""

    def __init__(self, variable, message=None):
        self.variable = variable
        super().__init__(message or f"substitution for {variable} breaks the symmetric/skew contract")


class MissingAssignment(StarPIError, KeyError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"no value assigned to {variable}")

    def __str__(self):
        return self.args[0]


class PolynomialSyntaxError(StarPIError, ValueError):
    """Malformed polynomial text; ``position`` is a 0-based character offset."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownVariable(PolynomialSyntaxError):
    pass


class ModeFieldMismatch(StarPIError, ValueError):
    pass


class BoundTooSmall(StarPIError, ValueError):
    pass


class UniverseMismatch(StarPIError, ValueError):
    pass


class BasisNotComplementary(StarPIError, ValueError):
    """The proposed basis words do not complement the identity space.

    ``diagnostics`` holds the rank numbers that exposed the failure.
    """

    def __init__(self, message, diagnostics):
        self.diagnostics = diagnostics
        super().__init__(f"{message}: {diagnostics}")


class MissingParameter(StarPIError, ValueError):
    pass


class InconsistentPQ(StarPIError, ValueError):
    pass
