"""Exception types shared across the package."""


class RangeError(ValueError):
    """An argument lies outside the domain where an operation is valid."""


class PrecisionError(ArithmeticError):
    """A requested error radius cannot be met at the working precision."""


class PoleError(ZeroDivisionError):
    """Evaluation requested at the pole of zeta."""


class ConstraintError(ValueError):
    """A parameter set violates a named feasibility condition.

    ``condition`` carries the label of the first violated condition, e.g.
    ``"omega-cap"`` or ``"d1-bound"``.
    """

    def __init__(self, condition, message):
        super().__init__(f"[{condition}] {message}")
        self.condition = condition


class ParseError(ValueError):
    """A zeros table line could not be accepted."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class EmptyTableError(ValueError):
    """No ordinates survived the cutoff."""


class TableLookupError(KeyError):
    """A (W, t0) pair is not among the published R1 constants."""


class CrossoverNotFound(RuntimeError):
    """A grid search hit its cap without finding a strict improvement."""
