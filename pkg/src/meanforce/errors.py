"""Exception types shared across the toolkit."""


class HermiticityError(ValueError):
    """Operator fails the Hermitian symmetry tolerance."""

    def __init__(self, violation: float, scale: float):
        self.violation = violation
        self.scale = scale
        super().__init__(
            f"operator is not Hermitian: max|M - M^dag| = {violation:.3e} "
            f"exceeds 1e-12 * max|M| = {1e-12 * scale:.3e}"
        )


class SpectrumDomainError(ValueError):
    """Scalar function is undefined on part of the operator spectrum."""

    def __init__(self, eigenvalue: float, detail: str = ""):
        self.eigenvalue = eigenvalue
        msg = f"matrix function undefined at eigenvalue {eigenvalue!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DimensionError(ValueError):
    """Operator dimensions incompatible with the requested operation."""

    def __init__(self, expected, actual):
        super().__init__(f"dimension mismatch: expected {expected}, got {actual}")


class PositivityError(ArithmeticError):
    """A matrix that must be positive (semi)definite is not, beyond tolerance."""


class ConsistencyError(ArithmeticError):
    """Two independent computation routes disagree beyond tolerance."""


class FiniteDifferenceWarning(UserWarning):
    """A finite-difference estimate looks step-size unstable."""
