"""Exception hierarchy for banalg.

Two families map onto CLI exit codes: ``InputError`` (bad algebra, bad
character, failed precondition) and ``SolverError`` (numerical machinery
did not deliver).
"""

from typing import Optional

from .const import EXIT_INPUT_ERROR, EXIT_SOLVER_FAILURE


class BanalgError(Exception):
    """Base class for every error raised by the package.

    Attributes:
        residual: The measured defect that triggered the error, when one exists.
    """

    exit_code: int = 1

    def __init__(self, message: str, residual: Optional[float] = None) -> None:
        super().__init__(message)
        self.residual = residual


class InputError(BanalgError):
    """The caller supplied something the operation cannot accept."""

    exit_code = EXIT_INPUT_ERROR


class SolverError(BanalgError):
    """A numerical procedure failed to produce a verified answer."""

    exit_code = EXIT_SOLVER_FAILURE


# ---------------------------------------------------------------------------
# Input errors
# ---------------------------------------------------------------------------


class DimensionMismatch(InputError):
    """Shapes or dimensions of the operands disagree."""


class NonAssociativeTable(InputError):
    """Structure constants violate associativity beyond tolerance."""


class ZeroFunctional(InputError):
    """A functional that must be nonzero is zero."""


class NotAGroup(InputError):
    """A Cayley table fails a group axiom."""


class NotAnIdeal(InputError):
    """A subspace is not closed under two-sided multiplication."""


class CharacterNotVerified(InputError):
    """A covector fails the multiplicativity check or is zero."""


class CharactersEqual(InputError):
    """Two characters that must differ coincide."""


class NoCharacters(InputError):
    """The algebra has an empty character space."""


class PreconditionViolated(InputError):
    """A hypothesis of a constructive operation fails its residual check."""


class NotAnIdentityOfI(InputError):
    """The element offered as identity of an ideal does not act as one."""


class NotAHomomorphism(InputError):
    """A linear map is not multiplicative within tolerance."""


class NotSurjective(InputError):
    """A linear map does not have full rank onto its target."""


class IdealHasNoIdentity(InputError):
    """An ideal lacks the two-sided identity the check requires."""


class IdealInsideKernel(InputError):
    """The ideal is contained in the kernel of the character."""


class SchemaError(InputError):
    """A JSON or YAML document does not match the expected schema."""


class SelectorError(InputError):
    """A character selector does not resolve to exactly one character."""


class ConfigError(InputError):
    """A configuration value is malformed."""


class UnknownConstructor(InputError):
    """A constructor spec names an unknown kind."""


# ---------------------------------------------------------------------------
# Solver errors
# ---------------------------------------------------------------------------


class SolverDidNotConverge(SolverError):
    """The character solver exhausted its retries without a verified set."""


class PostconditionViolated(SolverError):
    """An algebraically exact postcondition failed numerically."""


class ExtensionNotMultiplicative(SolverError):
    """An extended character failed the multiplicativity check."""
