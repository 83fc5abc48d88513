"""Exception hierarchy for the library.

Every error raised on purpose derives from LqError, so callers can catch one
type at the CLI boundary.
"""


class LqError(Exception):
    """Base class for all library errors."""


class NotLeftQuasigroup(LqError):
    """A table row is not a permutation; carries the offending row index."""

    def __init__(self, row: int):
        self.row = row
        super().__init__(f"NotLeftQuasigroup: row {row + 1}")


class DegreeMismatch(LqError):
    pass


class CapExceeded(LqError):
    """Group materialization would exceed the element cap."""


class OrderTooLarge(LqError):
    """Input is beyond the desk-scale cap of the requested operation."""


class NotACongruence(LqError):
    pass


class NotAdmissible(LqError):
    """Subgroup fails the preconditions for an orbit congruence."""


class NotSemimedial(LqError):
    pass


class Not2DivisibleSemimedial(LqError):
    pass


class NotAQuasigroup(LqError):
    """Right division required but some right multiplication is not bijective."""


class NotEndomorphism(LqError):
    pass


class NotAutomorphism(LqError):
    pass


class SizeMismatch(LqError):
    pass


class CayleyPropertyFails(LqError):
    """An iterated Cayley-kernel quotient hit a non-congruence kernel."""

    def __init__(self, level: int):
        self.level = level
        super().__init__(f"Cayley kernel is not a congruence at level {level}")


class MaltsevIdentityFails(LqError):
    """The multipotent ternary term violated one of its defining identities."""


class NoQualifyingDelta(LqError):
    """No congruence satisfied the group-side commutator condition (a bug:
    the full relation always qualifies)."""


class OracleDisagreement(LqError):
    """Two independent computations of the same value disagree."""


class CenterAssertionFailed(LqError):
    """The join of centralizing congruences is itself not centralizing."""


class InternalAssertion(LqError):
    """A cross-check that must hold by theory failed at runtime."""
