"""Exception types shared across the package."""


class GermForgeError(Exception):
    """Base class for domain errors."""


class JetBeyondTruncation(GermForgeError, ValueError):
    """A jet was requested above the known order of a truncated series."""


class NotRegular(GermForgeError, ValueError):
    """A series is not regular of the requested order in the chosen variable."""


class RegularDirectionExhausted(GermForgeError, RuntimeError):
    """No generic linear change was found within the attempt budget."""


class TruncationTooCoarse(GermForgeError, RuntimeError):
    """Truncated data cannot decide a vanishing that the computation needs."""


class MalformedFamily(GermForgeError, ValueError):
    """A pseudopolynomial system has the wrong shape."""
