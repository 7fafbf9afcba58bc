"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised for malformed or out-of-contract user input."""
