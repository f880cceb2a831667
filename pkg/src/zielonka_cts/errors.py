"""Exception hierarchy.

Input problems derive from :class:`ValueError` so callers that only care
about "bad argument" can catch that; exploration limits get their own
branch because the CLI maps them to a distinct exit status.
"""


class AutomataError(Exception):
    """Base class for every error raised by this package."""


class InputError(AutomataError, ValueError):
    pass


class UnknownLetterError(InputError):
    def __init__(self, letter, where="alphabet"):
        super().__init__(f"unknown letter {letter!r} (not in {where})")
        self.letter = letter


class IntegrityError(InputError):
    """A machine references something it does not declare."""


class SchemaError(InputError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class NondeterminismError(InputError):
    """A construction that needs a function was handed a relation."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


class PreconditionError(InputError):
    def __init__(self, message, word=None):
        super().__init__(message)
        self.word = word


class ResourceError(AutomataError):
    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded the cap of {cap}")
        self.cap = cap
