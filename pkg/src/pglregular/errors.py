"""Exception hierarchy shared by all modules."""


class PGLError(ValueError):
    """Base class for every error raised by this package."""


# fields
class NonPrimeCharacteristic(PGLError):
    pass


class ReducibleModulus(PGLError):
    pass


class DegreeMismatch(PGLError):
    pass


class FieldMismatch(PGLError):
    pass


class ZeroInverse(PGLError, ZeroDivisionError):
    pass


class FieldTooLarge(PGLError):
    pass


# projective line / group
class ZeroVector(PGLError):
    pass


class SingularMatrix(PGLError):
    pass


class CapExceeded(PGLError):
    pass


# regular sets
class MixedFields(PGLError):
    pass


class EmptySet(PGLError):
    pass


class ZeroPatternViolation(PGLError):
    pass


class NotVerified(PGLError):
    pass


class IdentityArgument(PGLError):
    pass


class NoIdentity(PGLError):
    pass


class NotAMember(PGLError):
    pass


# classification
class NotASubgroup(PGLError):
    pass


class EvenCharacteristicQ(PGLError):
    pass


class UnsupportedPair(PGLError):
    pass


# search
class SizeMismatch(PGLError):
    pass
