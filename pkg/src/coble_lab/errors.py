"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name) and an
``exit_code`` used by the command line front end.  Certified negative answers
(an obstruction was *proved*, not merely not found) use exit code 3.
"""


class CobleLabError(ValueError):
    exit_code = 2

    def __init__(self, message="", certificate=None):
        super().__init__(message)
        self.certificate = certificate

    @property
    def code(self):
        return type(self).__name__

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


class CertifiedNegative(CobleLabError):
    exit_code = 3


# lattice / picard
class RankMismatch(CobleLabError):
    pass


class NotARoot(CobleLabError):
    pass


class NonIntegralGenus(CobleLabError):
    pass


class NotUnimodularFrame(CobleLabError):
    pass


class PreconditionFailed(CobleLabError):
    pass


# enumeration
class BoundTooSmall(CobleLabError):
    pass


class NonExtendable(CertifiedNegative):
    pass


class BoundExceeded(CobleLabError):
    pass


class NotExceptionalClass(CobleLabError):
    pass


class NonIntegralFano(CobleLabError):
    pass


class UnstableBound(CobleLabError):
    pass


# binary forms
class DegeneratePencil(CobleLabError):
    pass


class CoincidentFixedPoints(CobleLabError):
    pass


class ScalarMap(CobleLabError):
    pass


# sextics
class DegenerateInput(CobleLabError):
    pass


class BasePoint(CobleLabError):
    pass


class DependentForms(CobleLabError):
    pass


class NotTenNodal(CertifiedNegative):
    pass


class NonBirational(CertifiedNegative):
    pass


# coincidence
class InvalidTriple(CobleLabError):
    pass


class SingularLambda(CobleLabError):
    pass
