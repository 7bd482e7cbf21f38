"""Exception hierarchy shared by all numreg modules."""


class NumregError(Exception):
    """Base class for every error raised by this package."""


class NoRecurrenceFound(NumregError):
    """No linear recurrence of admissible order fits all supplied terms."""


class NotIncreasing(NumregError):
    """A generated base-sequence term violates strict monotonicity."""


class OutOfRange(NumregError):
    """An index or offset argument lies outside its admissible range."""


class InvalidCandidate(NumregError):
    """A candidate maximal-word language violates one of the structural
    conditions required for it to arise from a positional system."""

    def __init__(self, message, lengths=None):
        super().__init__(message)
        self.lengths = lengths


class UnresolvedExpansion(NumregError):
    """An operation needs every expansion of 1 resolved, but at least one
    is still unknown (budget exhausted)."""


class UndefinedIntermediate(NumregError):
    """The requested intermediate expansion does not exist (a hop along the
    successor path is missing or infinite)."""


class UndefinedIndex(NumregError):
    """A difference-sequence value is requested at an index where its
    defining formula is not applicable."""


class NotPeriodic(NumregError):
    """A difference sequence required to be ultimately periodic is not."""


class NotDriftStable(NumregError):
    """A difference sequence does not have the ultimately-affine behaviour
    needed to extract drift constants."""


class DecompositionMismatch(NumregError):
    """The maximal words do not follow the eventually periodic pattern
    promised by the analysis certificate; indicates an internal bug."""


class RefinementBudgetExceeded(NumregError):
    """Interval refinement hit its safety cap without deciding a sign."""


class BaseExtractionError(NumregError):
    """Extraction of the associated alternate base failed.

    ``reason`` is one of:

    * ``"NotRhoXiStructure"`` -- the dominant eigenvalues are not a positive
      real times roots of unity within the searched bound.  This certifies
      that the numeration language is not regular.
    * ``"UnequalDominantDegrees"`` -- the per-residue subsequences do not
      carry the dominant eigenvalue with a common multiplicity.
    * ``"UnsupportedField"`` -- the exact computation left the single number
      field this implementation works in, or dominance could not be
      certified exactly.
    """

    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason
