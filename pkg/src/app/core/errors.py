# dacopt
# Copyright (C) 2026  dacopt developers


class DacOptError(Exception):
    """Root of every error raised by dacopt"""


class InvalidConfiguration(DacOptError, ValueError):
    pass


class OverlapOrGapError(DacOptError, ValueError):
    pass


class IndexOutOfRange(DacOptError, IndexError):
    pass


class BudgetExhausted(DacOptError):
    """
    Raised by counted_eval when the FE budget is spent.
    Algorithms treat it as the end of the run, never as a failure.
    """

    def __init__(self, budget: int):
        super(BudgetExhausted, self).__init__(f"FE budget of {budget} exhausted")
        self.budget = budget


class NonFiniteValue(DacOptError, ArithmeticError):
    pass


class DimensionTooSmall(DacOptError, ValueError):
    pass


class DimensionMismatch(DacOptError, ValueError):
    pass


class IncompatibleDimensions(DacOptError, ValueError):
    pass


class InvalidGroupCount(DacOptError, ValueError):
    pass


class GridTooLarge(DacOptError, ValueError):
    def __init__(self, size: int, cap: int):
        super(GridTooLarge, self).__init__(f"Oracle needs {size} composed evaluations, above the cap of {cap}")
        self.size = size
        self.cap = cap


class OutOfRangeProbability(DacOptError, ValueError):
    pass


class NonPositiveValues(DacOptError, ValueError):
    pass


class UsageError(DacOptError, ValueError):
    pass


class ExternalObjectiveError(DacOptError):
    pass


class ProtocolError(ExternalObjectiveError):
    pass


class WorkerTimeout(ExternalObjectiveError, TimeoutError):
    pass


class WorkerCrashed(ExternalObjectiveError):
    pass
