"""Exception hierarchy. Every error carries the CLI exit code it maps to."""

from __future__ import annotations


class QuandleKitError(Exception):
    exit_code = 1


class ParseError(QuandleKitError):
    exit_code = 2


class ShapeError(ParseError):
    pass


class LetterOutOfRange(ParseError):
    pass


class ZeroLetter(ParseError):
    pass


class AxiomViolation(QuandleKitError):
    """Raised by verify_quandle.

    ``axiom`` is the first violated axiom (1 idempotence, 2 right invertibility,
    3 right self-distributivity); ``violations`` lists every violated axiom with
    its first witness.
    """

    exit_code = 3

    def __init__(self, violations: list[tuple[int, tuple]]):
        self.violations = violations
        self.axiom, self.witness = violations[0]
        msg = "; ".join(f"axiom {ax} fails at {w}" for ax, w in violations)
        super().__init__(msg)


class CocycleViolation(QuandleKitError):
    exit_code = 3

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} at {witness}")


class ConstantCocycleViolation(CocycleViolation):
    pass


class SizeLimit(QuandleKitError):
    exit_code = 4


class NotAKnot(QuandleKitError):
    exit_code = 5


class NonIntegralResult(QuandleKitError):
    exit_code = 6


class InvalidParameter(QuandleKitError, ValueError):
    exit_code = 2


class NotCoprime(InvalidParameter):
    pass


class ModulusMismatch(InvalidParameter):
    pass


class BaseMismatch(InvalidParameter):
    pass


class NotASubgroup(InvalidParameter):
    pass


class NoSuchClass(QuandleKitError):
    pass


class BaseNotKei(QuandleKitError):
    pass


class NotConnected(QuandleKitError):
    pass


class IsFaithful(QuandleKitError):
    pass


class FibersUnequal(QuandleKitError):
    pass


class PreconditionUnverified(QuandleKitError):
    pass


class MissingAnchor(QuandleKitError):
    pass
