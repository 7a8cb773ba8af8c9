"""Exception types shared across the package."""


class KneserLabError(Exception):
    """Base class for all package errors."""


class DescriptorMismatch(KneserLabError):
    """Operands belong to different coefficient fields."""


class DivisionByZero(KneserLabError):
    """Division or inversion of a zero field element."""


class NotPrime(KneserLabError):
    """Requested characteristic is not a prime number."""


class ReducibleModulus(KneserLabError):
    """Extension-field modulus is not irreducible (or not monic)."""


class DimensionOverflow(KneserLabError):
    """Tower dimension exceeds the configured cap."""


class TowerMismatch(KneserLabError):
    """Operands live in different towers."""


class TowerInvariantError(KneserLabError):
    """A structural invariant of the algebra failed at construction."""


class SingularMultiplicationMap(KneserLabError):
    """Multiplication-by-a map is singular for nonzero a: the algebra is not a field."""


class UnitNotInSpan(KneserLabError):
    """Operation requires 1 to lie in the given subspace."""


class DegenerateForm(KneserLabError):
    """Bilinear form Gram matrix is singular."""


class EnumerationTooLarge(KneserLabError):
    """Subspace enumeration would exceed the configured cap."""


class InfiniteBaseField(KneserLabError):
    """Exhaustive enumeration requested over an infinite base field."""


class StabilizerNotTrivial(KneserLabError):
    """Cell analysis requires H(S) = F; the offending subfield is attached."""

    def __init__(self, message, subfield=None):
        super().__init__(message)
        self.subfield = subfield


class GeneratesProperSubfield(KneserLabError):
    """Cell analysis requires F(S) = L."""

    def __init__(self, message, subfield=None):
        super().__init__(message)
        self.subfield = subfield


class TheoremViolation(KneserLabError):
    """A verified statement failed on a concrete instance (bug detector)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class GroupMismatch(KneserLabError):
    """Group subsets belong to different groups."""


class EmptyInput(KneserLabError):
    """Operation requires a nonempty subset."""


class ConfigError(KneserLabError):
    """Invalid run configuration or tower spec file."""
