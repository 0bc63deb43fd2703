"""Exception types shared across the engine."""


class EpimaxError(Exception):
    """Base class for every error raised by this package."""


class FormulaSyntaxError(EpimaxError):
    """Concrete-syntax error; carries the character offset of the failure."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownPropositionError(FormulaSyntaxError):
    """An identifier does not belong to the active vocabulary."""


class NestedBeliefError(EpimaxError):
    """A belief operator occurs inside another belief operator."""

    def __init__(self, path):
        self.path = tuple(path)
        super().__init__(
            "belief operator nested inside another belief operator: "
            + " -> ".join(self.path)
        )


class NotPropositionalError(EpimaxError):
    """A purely propositional formula was required but a modal one was given."""


class CapExceededError(EpimaxError):
    """A configured size cap (vocabulary, enumeration, entry count) was hit."""


class InconsistentKnowledgeError(EpimaxError):
    """Hard constraints exclude every situation (partition function is zero)."""


class ZeroProbabilityEventError(EpimaxError):
    """Conditioning on an event of probability zero."""


class InfeasibleConstraintError(EpimaxError):
    """A probability target cannot be met by any finite weight assignment."""


class NonConvergenceError(EpimaxError):
    """The optimizer stopped without meeting its tolerance.

    The partial fit is attached as ``report`` for diagnostics.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class KbFileError(EpimaxError):
    """Malformed knowledge-base or constraints file."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
