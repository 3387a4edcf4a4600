"""Exception hierarchy.

Every domain error carries its class name verbatim into CLI output, so the
names here are part of the public interface.
"""


class QuandleError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self) -> str:
        return type(self).__name__


# numerics
class MixedMode(QuandleError, TypeError):
    pass


class MixedField(QuandleError, TypeError):
    pass


class DivisionByZero(QuandleError, ZeroDivisionError):
    pass


class ExactModeUnsupported(QuandleError, ValueError):
    pass


class NonFinite(QuandleError, ValueError):
    pass


# moebius
class NotUnimodular(QuandleError, ValueError):
    pass


class ZeroParameter(QuandleError, ValueError):
    pass


class IdentityHasAllPoints(QuandleError, ValueError):
    pass


# components
class NotInComponent(QuandleError, ValueError):
    pass


class ParabolicTrace(QuandleError, ValueError):
    pass


class CentralElement(QuandleError, ValueError):
    pass


# decompose
class ZeroTransvection(QuandleError, ValueError):
    pass


# quandle
class BudgetExceeded(QuandleError, RuntimeError):
    pass


class IntertwiningFailure(QuandleError, AssertionError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class ImageEscapesH(QuandleError, AssertionError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# kleinian
class NumericalCollision(QuandleError, RuntimeError):
    def __init__(self, msg, words=()):
        super().__init__(msg)
        self.words = tuple(words)


class TrivialGamma(QuandleError, ValueError):
    pass


class HomomorphismFailure(QuandleError, AssertionError):
    def __init__(self, msg, witness=()):
        super().__init__(msg)
        self.witness = tuple(witness)


class EmptyWindow(QuandleError, ValueError):
    pass


# cli
class UnknownSubcommand(QuandleError, ValueError):
    pass


class MalformedJSON(QuandleError, ValueError):
    pass
