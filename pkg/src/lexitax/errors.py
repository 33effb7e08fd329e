"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class LexitaxError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 3


class ConfigError(LexitaxError):
    """Bad usage or configuration (unknown keys, invalid values, missing paths)."""

    exit_code = 1


class DataFormatError(LexitaxError):
    """Malformed or inconsistent input data (parse errors, unknown ids)."""

    exit_code = 2


class InvariantError(LexitaxError):
    """An internal consistency check failed."""

    exit_code = 3
