"""Error types shared across the package.

Each domain error carries a stable ``code`` string so the command-line
front end can map failures onto exit codes and machine-readable reports.
"""


class MultifracError(Exception):
    """Base class for every domain error raised by this package."""

    code = "Error"


class ZeroDenominator(MultifracError):
    code = "ZeroDenominator"


class NegativeValue(MultifracError):
    code = "NegativeValue"


class NotPrime(MultifracError):
    code = "NotPrime"


class ZeroGenerator(MultifracError):
    code = "ZeroGenerator"


class DuplicateBase(MultifracError):
    code = "DuplicateBase"


class NotAGenerator(MultifracError):
    code = "NotAGenerator"


class NotCanonical(MultifracError):
    code = "NotCanonical"


class BadIndex(MultifracError):
    code = "BadIndex"


class ImproperBase(MultifracError):
    code = "ImproperBase"


class ValueMismatch(MultifracError):
    code = "ValueMismatch"


class NotHub(MultifracError):
    code = "NotHub"


class NotMember(MultifracError):
    code = "NotMember"


class ZeroLength(MultifracError):
    code = "ZeroLength"


class BadSeed(MultifracError):
    code = "BadSeed"


class BadLevel(MultifracError):
    code = "BadLevel"


class ParseError(MultifracError):
    """Malformed textual input; treated as a usage error by the CLI."""

    code = "ParseError"
