"""Exception types shared across the package."""


class PCFactorError(Exception):
    """Base class for all library errors."""


class InvalidInstance(PCFactorError):
    """Instance file or color matrix is malformed."""


class SideSizeTooLarge(PCFactorError):
    """Exhaustive search requested above the hard size cap."""


class BudgetExhausted(PCFactorError):
    """Time budget ran out; carries the partial report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class InvalidSystem(PCFactorError):
    """A path-cycle system failed verification."""


class PreconditionViolated(PCFactorError):
    """An operation was invoked outside its stated preconditions."""


class SurgeryInvariantViolated(PCFactorError):
    """A path exchange produced an invalid structure (internal defect)."""


class NoOutsideVertex(PCFactorError):
    """No free vertex on the required side (cannot occur on valid states)."""


class OverlapError(PCFactorError):
    """Absorbing path shares a vertex with the path being extended."""


class NotAbsorbing(PCFactorError):
    """The given short path does not absorb the given element."""


class NoLinkingEdge(PCFactorError):
    """No edge links the two element pairs into a properly colored path."""

    def __init__(self, message, precondition_met=None):
        super().__init__(message)
        self.precondition_met = precondition_met


class ResampleBudgetExhausted(PCFactorError):
    """Family sampler never hit its acceptance thresholds; carries stats."""

    def __init__(self, message, best_stats):
        super().__init__(message)
        self.best_stats = best_stats


class LinkFailure(PCFactorError):
    """Absorbing-cycle construction could not place a connector edge."""

    def __init__(self, step, cause):
        super().__init__(f"no connector edge at step {step}: {cause}")
        self.step = step
        self.cause = cause


class MatchingDeficient(PCFactorError):
    """No matching covers all paths; carries a violating path subset."""

    def __init__(self, message, violators):
        super().__init__(message)
        self.violators = violators


class SpliceInvariantViolated(PCFactorError):
    """Splicing absorbed paths into the cycle broke proper coloring."""


class RegimeFailure(PCFactorError):
    """The prescribed-length cycle driver failed; carries stage and cause."""

    def __init__(self, stage, cause):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
