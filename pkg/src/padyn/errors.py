"""Exception hierarchy shared by every padyn module."""


class PadynError(Exception):
    """Base class for all library errors."""


class InputError(PadynError):
    """Malformed input: bad field data, shapes, schemas. Maps to CLI exit 1."""


class MathError(PadynError):
    """A well-formed question whose answer is negative or undecidable at the
    working precision. Maps to CLI exit 2."""


# local_field
class NotPrime(InputError):
    pass


class NotEisenstein(InputError):
    pass


class SpecMismatch(InputError):
    pass


class NotAUnit(MathError):
    pass


# series_ring
class ConstantTermError(InputError):
    pass


class NotInvertible(MathError):
    pass


class AllCoefficientsBelowPrecision(MathError):
    pass


class TowerMismatch(InputError):
    pass


# formal_groups
class NotAUniformizer(InputError):
    pass


class SingularStep(MathError):
    pass


class NoSolution(MathError):
    def __init__(self, message="", index=None):
        self.index = index
        super().__init__(message)


class PrecisionExhausted(MathError):
    pass


# dynamics
class DoesNotCommute(MathError):
    def __init__(self, index, valuation=None):
        self.index = index
        self.valuation = valuation
        super().__init__(f"commutator is nonzero at T^{index} (valuation {valuation})")


class WrongShape(InputError):
    pass


class NonDecomposable(MathError):
    pass


class NoCommutantAtPrecision(MathError):
    def __init__(self, index, message=""):
        self.index = index
        super().__init__(message or f"commutant obstruction at T^{index}")


class NormalizationFailed(MathError):
    pass


class PolygonAmbiguous(MathError):
    pass


class RelationDegenerate(MathError):
    pass


class CertificateMissing(MathError):
    pass


# cli
class SchemaError(InputError):
    pass
