"""Exception hierarchy for scpanneal."""


class ScpAnnealError(Exception):
    """Base class for all library errors."""


# -- instances ---------------------------------------------------------------

class ConfigInfeasible(ScpAnnealError):
    """Generator conditions cannot be met for the requested parameters."""


class ElementOutOfRange(ScpAnnealError, IndexError):
    """Element index outside 1..n."""


class LengthMismatch(ScpAnnealError, ValueError):
    """A vector argument has the wrong length."""


class ParseError(ScpAnnealError, ValueError):
    """Malformed instance document; message carries the location."""


class InvariantViolation(ScpAnnealError, ValueError):
    """A constructed or parsed object breaks its structural invariants."""


# -- polynomials -------------------------------------------------------------

class IndexOutOfRange(ScpAnnealError, IndexError):
    """Variable index outside 0..num_vars-1."""


class DuplicateIndexInTerm(ScpAnnealError, ValueError):
    """A term key contains a repeated variable index."""


class DegreeTooHigh(ScpAnnealError, ValueError):
    """Operation requires a quadratic polynomial but got a higher degree."""


# -- formulations / quadratization -------------------------------------------

class PenaltyTooSmall(ScpAnnealError, ValueError):
    """Penalty does not satisfy mu > max weight; use force=True to override."""


class InvalidPenalty(ScpAnnealError, ValueError):
    """Penalty must be positive."""


# -- solvers / drivers -------------------------------------------------------

class TooManyVariables(ScpAnnealError, ValueError):
    """Polynomial exceeds the brute-force enumeration guard."""


class InvalidParams(ScpAnnealError, ValueError):
    """Solver or driver parameters violate their invariants."""


# -- harness -----------------------------------------------------------------

class InvalidConfig(ScpAnnealError, ValueError):
    """Experiment configuration is malformed."""


class MissingBaseline(ScpAnnealError, ValueError):
    """Normalization baseline has no records in some (m, n) cell."""


class ZeroBaselineCost(ScpAnnealError, ValueError):
    """Normalization baseline has mean cost 0 in some (m, n) cell."""
