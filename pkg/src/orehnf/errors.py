"""Exception types shared across the package."""


class OrehnfError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(OrehnfError, ZeroDivisionError):
    """Division by a zero field element or zero operator."""


class ZeroOperand(OrehnfError, ValueError):
    """An operand was zero where a nonzero element is required (e.g. LCLM)."""


class ShapeError(OrehnfError, ValueError):
    """Matrix dimensions do not match the operation's requirements."""


class DerivationMismatch(OrehnfError, ValueError):
    """Operands were built over different derivations."""


class RankDeficient(OrehnfError, ValueError):
    """The matrix does not have full row rank."""


class NotUnimodular(OrehnfError, ValueError):
    """The matrix has no two-sided inverse over the operator ring."""


class NotCleared(OrehnfError, ValueError):
    """An operator coefficient has a nontrivial denominator where a
    polynomial coefficient is required."""


class ParseError(OrehnfError, ValueError):
    """Syntax error in an entry expression or instance file."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line or column:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
