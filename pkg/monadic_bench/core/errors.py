#
# Exceptions raised by the workbench
#


class BenchError(Exception):
    """Base class of all workbench errors.
    """


class LineError(BenchError, ValueError):
    """A line of some textual artifact could not be read.

    Parameters
    ----------
    line : int
        The 1-based line number of the offending line (0 when unknown)
    reason : str
        What is wrong with the line
    """

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateUserKey(BenchError, ValueError):
    pass


class VersionMismatch(BenchError):
    pass


class UnknownPreFunction(BenchError, ValueError):
    pass


class ReductionDepthExceeded(BenchError):
    pass


class NoGrammarLoaded(BenchError):
    pass


class NoDerivations(BenchError):
    pass


class UnknownKey(BenchError, KeyError):
    pass


class EmptySupervision(BenchError, ValueError):
    pass


class EmptyPosList(BenchError, ValueError):
    pass


class UnbalancedMweBars(BenchError, ValueError):
    pass


class ChartOverflow(BenchError):
    pass


class SpawnFailure(BenchError):
    pass


class UnknownCommand(BenchError):
    pass


class CommandUsageError(BenchError):
    pass
