"""Exception hierarchy.

Input problems (bad files, unmet hypotheses) and theorem violations are kept
apart: the first is the caller's fault, the second is a bug or a genuine
counterexample.
"""


class LatwidthError(Exception):
    pass


class ParseError(LatwidthError, ValueError):
    pass


class DimensionError(LatwidthError, ValueError):
    pass


class EmptyPolyhedronError(LatwidthError, ValueError):
    pass


class WidthInfiniteError(LatwidthError, ValueError):
    pass


class HypothesisError(LatwidthError, ValueError):
    """A verifier precondition does not hold for the given instance."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = f"hypothesis: {hypothesis} failed"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class TheoremViolation(LatwidthError):
    """A verified conclusion failed on an instance satisfying all hypotheses."""
