"""Exception hierarchy shared by all floodsim modules."""


class FloodsimError(Exception):
    """Base class for every error raised by floodsim."""


class SpecStructureError(FloodsimError, ValueError):
    """Degree sequences have the wrong shape, sign or magnitude."""


class DegenerateSpecError(FloodsimError, ValueError):
    """The active-active degree sequence is identically zero."""


class SubcriticalError(FloodsimError, ValueError):
    """nu11 <= 1, so the active subgraph has no giant branching growth."""


class FamilyError(FloodsimError, ValueError):
    """Family preset parameters cannot produce a valid degree spec."""


class PreconditionError(FloodsimError, ValueError):
    """An operation was called on inputs violating its precondition."""


class GenerationSaturated(FloodsimError, RuntimeError):
    """Rejection sampling for a simple graph ran out of attempts."""

    def __init__(self, attempts, last_report):
        self.attempts = attempts
        self.last_report = last_report
        super().__init__(
            f"no simple graph after {attempts} attempts "
            f"(last attempt: {last_report.self_loop_count} self-loops, "
            f"{last_report.parallel_edge_count} parallel edges)"
        )


class OracleSizeError(FloodsimError, ValueError):
    """Brute-force oracle refused an instance above its size cap."""


class InsufficientData(FloodsimError, ValueError):
    """Not enough successful replicates to judge convergence."""


class ExperimentAborted(FloodsimError, RuntimeError):
    """More than half of the replicates at some kappa failed."""

    def __init__(self, kappa, table):
        self.kappa = kappa
        self.table = table
        super().__init__(f"experiment aborted at kappa={kappa}: {table}")


class FormatError(FloodsimError, ValueError):
    """A text input (spec, edge list, plan, records) could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
