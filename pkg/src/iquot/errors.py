"""Exception types raised on bad input.

Everything here derives from :class:`InputError`; the CLI maps that to exit code 3.
"""


class InputError(ValueError):
    pass


class GroupAxiomError(InputError):
    pass


class EndomorphismError(InputError):
    pass


class WindowError(InputError):
    pass


class ProfileError(InputError):
    pass


class ConfigError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ModeError(InputError):
    """An operation needs a reference-mode window but got an abstract one."""
