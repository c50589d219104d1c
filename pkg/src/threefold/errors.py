"""Exception hierarchy. Every domain error carries its class name to the CLI."""


class ThreefoldError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class StructuralError(ThreefoldError, ValueError):
    """Gluing table is malformed (bad index, bad permutation, broken involution)."""


class MoveNotApplicable(ThreefoldError):
    pass


class NotClosed(ThreefoldError):
    pass


class NotAdmissible(ThreefoldError):
    """Normal coordinate vector violates the quadrilateral condition."""


class BoundTooLargeForDeskScale(ThreefoldError):
    pass


class NotIdeal(ThreefoldError):
    pass


class NotOrientable(ThreefoldError):
    pass


class NonConvergence(ThreefoldError):
    pass


class DegenerateShape(ThreefoldError):
    pass


class SingularJacobian(ThreefoldError):
    pass


class CannotCertify(ThreefoldError):
    pass


class IncompleteStructure(ThreefoldError):
    pass


class ZeroConstantTerm(ThreefoldError, ValueError):
    pass
