"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid experiment or model configuration (CLI exit code 2)."""


class CapacityError(RuntimeError):
    """Input exceeds a documented exact-computation size cap (CLI exit code 3)."""
