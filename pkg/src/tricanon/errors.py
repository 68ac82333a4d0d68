"""Exception types raised by the canonical-form library."""


class CanonicalFormError(Exception):
    """Base class for all library-specific errors."""


class ParseError(CanonicalFormError):
    """Raised when scalar, matrix, or descriptor text cannot be parsed."""


class FieldLimitationError(CanonicalFormError):
    """Base class for failures caused by the working field being too small."""


class EigenvalueOutsideField(FieldLimitationError):
    """Raised when a required eigenvalue does not lie in Q(i).

    The offending irreducible factor (or polynomial) is recorded in
    ``detail`` so callers can report exactly which root was missing.
    """

    def __init__(self, detail=""):
        self.detail = str(detail)
        super().__init__(
            "eigenvalue outside Q(i)" + (f": {self.detail}" if self.detail else "")
        )


class SqrtNotInField(FieldLimitationError):
    """Raised when a square root needed for a witness is not in Q(i).

    ``value`` is the scalar whose square root was requested.
    """

    def __init__(self, value):
        self.value = value
        super().__init__(f"square root of {value} is not in Q(i)")


class StructureError(CanonicalFormError):
    """Base class for structural precondition violations on inputs."""


class NotSymmetric(StructureError):
    """Raised when a matrix required to be symmetric is not."""


class NotSkewSymmetric(StructureError):
    """Raised when a matrix required to be skew-symmetric is not."""


class NotHermitian(StructureError):
    """Raised when a matrix required to be Hermitian is not."""


class SingularMatrixError(CanonicalFormError):
    """Raised when a matrix required to be invertible is singular."""


class MalformedPencil(CanonicalFormError):
    """Raised when a pencil violates an invariant that valid inputs satisfy.

    For the single-matrix canonicalizers this signals a block multiset that
    no matrix of the requested symmetry class can produce; inside the
    pencil reduction it guards internal consistency checks.
    """


class PencilNotCompatible(StructureError):
    """Raised when a pair's block multiset is not realizable for the relation."""


class NotEquivalent(CanonicalFormError):
    """Raised when two inputs are provably not equivalent under the relation."""
