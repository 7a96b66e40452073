"""Exception hierarchy shared by the models, the harness and the CLI."""


class MeansToolkitError(Exception):
    """Base class for every error raised by the toolkit"""


class InvalidInput(MeansToolkitError, ValueError):
    """Arguments break a type invariant (non-positive value, unordered quad, ...)"""


class HypothesisViolation(MeansToolkitError):
    """Inputs fail an inequality's declared hypothesis"""


class RangeError(MeansToolkitError, OverflowError):
    """A final exponentiation overflows binary64"""


class SamplingError(MeansToolkitError):
    """A rejection sampler ran out of redraws"""


class UnsupportedOperation(MeansToolkitError, KeyError):
    """Unknown inequality id or oracle operation tag"""

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class ConfigurationError(MeansToolkitError):
    """An environment setting could not be parsed"""
