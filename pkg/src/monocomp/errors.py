"""Exception types raised across the package."""


class MonocompError(ValueError):
    """Base class for all domain errors raised by monocomp."""


class NotPrimePower(MonocompError):
    pass


class UnsupportedOrder(MonocompError):
    pass


class UnsupportedR(MonocompError):
    pass


class TooSmallN(MonocompError):
    pass


class TooLarge(MonocompError):
    pass


class GraphFormatError(MonocompError):
    """Malformed graph file; ``lineno`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class EdgeInsideBlock(MonocompError):
    pass


class PreconditionViolated(MonocompError):
    pass


class DensityPreconditionViolated(PreconditionViolated):
    pass


class Beta3ColorOutOfRange(MonocompError):
    pass


class BudgetExceeded(MonocompError):
    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"exhaustive search needs {required} evaluations, budget is {budget}")
