"""Exception hierarchy.

Every domain error carries a machine-readable ``code`` (the class name by
default) so the command line front end can report it uniformly.
"""


class BogolabError(Exception):
    """Base class for all domain errors raised by the package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# model
class SymmetryViolation(BogolabError):
    def __init__(self, symmetry, index, magnitude):
        self.symmetry = symmetry
        self.index = tuple(int(i) for i in index)
        self.magnitude = float(magnitude)
        super().__init__(
            f"{symmetry} symmetry violated at index {self.index} "
            f"(defect {self.magnitude:.3e})"
        )


class NonHermitianKinetic(BogolabError):
    pass


class NonFinite(BogolabError):
    pass


class ProfileNotEven(BogolabError):
    pass


class MissingW2(BogolabError):
    pass


class NonPositiveKinetic(BogolabError):
    pass


class ModelFormatError(BogolabError):
    pass


# hartree
class ZeroVector(BogolabError):
    pass


class NoConvergence(BogolabError):
    def __init__(self, iterations, residual):
        self.iterations = int(iterations)
        self.residual = float(residual)
        super().__init__(
            f"no convergence after {self.iterations} iterations "
            f"(last residual {self.residual:.3e})"
        )


# bogoliubov
class NotStationary(BogolabError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"state is not stationary (residual {self.residual:.3e})")


class NotStable(BogolabError):
    pass


# fock
class SizeOverflow(BogolabError):
    pass


class ConvergenceFailure(BogolabError):
    def __init__(self, k_reached, message=""):
        self.k_reached = int(k_reached)
        super().__init__(message or f"only {self.k_reached} eigenpairs converged")


class DimensionMismatch(BogolabError):
    pass


class IdentityDefect(BogolabError):
    """The termwise residual decomposition does not add up to the full residual."""


# harness
class UnstableCondensate(BogolabError):
    pass


class TargetUnstable(BogolabError):
    pass


class InsufficientN(BogolabError):
    pass


class HypothesisViolated(BogolabError):
    pass


class DegenerateMinimizer(BogolabError):
    pass


class InsufficientData(BogolabError):
    pass
