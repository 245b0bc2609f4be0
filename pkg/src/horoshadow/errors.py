"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A configuration file or value is invalid."""


class PrerequisiteError(RuntimeError):
    """A subcommand needs an artifact that an earlier subcommand produces."""


class PrecisionError(ArithmeticError):
    """A requested computation falls below double-precision resolution."""
