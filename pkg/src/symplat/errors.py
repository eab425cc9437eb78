"""Exception hierarchy.

Three coarse classes matter to callers (and to the CLI exit codes):
input/precondition problems, exhausted enumeration budgets, and failed
certifications of identities that the constructions promise.
"""


class SymplatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SymplatError, ValueError):
    """A precondition on the inputs is violated (bad lattice, bad span, ...)."""


class IsotropyError(DomainError):
    """A subgroup required to be (maximal) totally isotropic is not."""


class BudgetError(SymplatError):
    """An enumeration would exceed the configured budget."""


class CertificationError(SymplatError):
    """An identity that the construction is required to certify fails.

    ``failures`` lists the names of the failed identities.
    """

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = tuple(failures)
