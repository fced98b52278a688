"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name) so the CLI can
serialize it.  ``Refusal`` subclasses signal a violated hypothesis (exit code 2);
everything else is treated as an internal failure (exit code 1).
"""


class OtArithError(Exception):
    @property
    def code(self):
        return type(self).__name__


class Refusal(OtArithError):
    """Input is well-formed but violates a hypothesis of the requested computation."""


# exact-linalg
class NotSublattice(OtArithError):
    pass


class SingularLattice(OtArithError):
    pass


# numfield
class Reducible(Refusal):
    pass


class NonMonic(Refusal):
    pass


class MixedFields(OtArithError):
    pass


class ZeroElement(OtArithError):
    pass


# ideal-arith
class ZeroIdeal(OtArithError):
    pass


class NonInvertible(Refusal):
    """Raised when I * (O:I) != O, i.e. the supplied order is not maximal."""


class CapExceeded(Refusal):
    pass


class IndexDivisor(OtArithError):
    pass


# unit-groups
class NonIntegral(OtArithError):
    pass


class NotInSpan(OtArithError):
    pass


class NotSubgroup(OtArithError):
    pass


class InfiniteIndex(Refusal):
    pass


class SearchExhausted(OtArithError):
    pass


class NotUnit(Refusal):
    pass


# ot-aut
class NotAdmissible(Refusal):
    pass


class NotSimpleType(Refusal):
    pass


class MissingUnitBasis(Refusal):
    pass


class ContextMismatch(OtArithError):
    pass


# ray-class
class NotExceptional(Refusal):
    pass


class NonIntegralRatio(OtArithError):
    pass


# torsion-growth
class TorsionUnit(Refusal):
    pass


# cli
class ParseError(Refusal):
    pass


class ShapeError(Refusal):
    pass
