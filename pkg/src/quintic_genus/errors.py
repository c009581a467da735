"""Exception hierarchy shared by every module."""


class QuinticGenusError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(QuinticGenusError, ValueError):
    """An argument violates a documented precondition."""


class LiftingObstruction(QuinticGenusError):
    """Hensel lifting was given factors that are not coprime modulo p."""


class IrregularSplitting(QuinticGenusError):
    """Newton-polygon refinement could not separate the residual data."""

    def __init__(self, prime, depth, detail=""):
        self.prime = prime
        self.depth = depth
        msg = f"irregular splitting at p={prime} (refinement depth {depth})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotTotallyRamified(QuinticGenusError):
    """An operation needing a totally ramified prime was given another type."""


class SearchExhausted(QuinticGenusError):
    """A bounded search ended without finding what it was looking for."""


class PrecisionTooLow(QuinticGenusError):
    """p-adic root search could not resolve candidates at the given precision."""


class UnsupportedPrime(QuinticGenusError):
    """The requested prime is outside what the local enumeration covers."""


class FactorizationTimeout(QuinticGenusError):
    """Integer factorization gave up; ``cofactor`` is the unfactored part."""

    def __init__(self, cofactor, known=None):
        self.cofactor = cofactor
        self.known = dict(known or {})
        super().__init__(f"could not factor cofactor {cofactor}")


class InconsistentResult(QuinticGenusError):
    """Two independent computations of the same quantity disagreed."""


class CorpusRejected(QuinticGenusError):
    """More than half of the lines of a corpus file failed to parse or validate."""

    def __init__(self, failed, total, problems=()):
        self.failed = failed
        self.total = total
        self.problems = list(problems)
        super().__init__(f"{failed} of {total} corpus lines rejected")
