"""RadoKit Exception Hierarchy."""


class RadoKitError(Exception):
    """Base exception for all RadoKit errors."""
    pass


class ParseError(RadoKitError):
    """Raised when equation or combination text does not match the grammar."""
    def __init__(self, message: str, position: int):
        self.message = message
        self.position = position
        super().__init__(f"Parse error at column {position}: {message}")


class SemanticError(RadoKitError):
    """Base exception for well-formed input that violates a precondition."""
    pass


class InvalidEquation(SemanticError):
    """Raised when an equation cannot be used for the requested operation."""
    def __init__(self, coeffs: tuple[int, ...] | list[int], reason: str):
        self.coeffs = tuple(coeffs)
        self.reason = reason
        super().__init__(f"Invalid equation {list(self.coeffs)}: {reason}")


class InvalidInput(SemanticError):
    """Raised when search or enumeration input is malformed."""
    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"Invalid input for '{field}': {message}")


class DimensionMismatch(SemanticError):
    """Raised when two sequences that must agree in length do not."""
    def __init__(self, what: str, expected: int, found: int):
        self.what = what
        self.expected = expected
        self.found = found
        super().__init__(f"{what}: expected length {expected}, got {found}")


class RangeError(SemanticError):
    """Raised when a value falls outside a coloring's domain."""
    def __init__(self, value: int, n_max: int):
        self.value = value
        self.n_max = n_max
        super().__init__(f"Value {value} is outside the colored segment 1..{n_max}")


class ResourceExceeded(RadoKitError):
    """Raised when a configured search or enumeration cap is exhausted.

    This is never a definitive answer: the question stays undecided.
    """
    def __init__(self, resource: str, limit: int, used: int | None = None, partial: dict | None = None):
        self.resource = resource
        self.limit = limit
        self.used = used if used is not None else limit
        self.partial = partial or {}
        super().__init__(f"{resource} limit of {limit} exceeded")

    def __reduce__(self):
        # Search workers raise this across process boundaries.
        return (type(self), (self.resource, self.limit, self.used, self.partial))


class CacheError(RadoKitError):
    """Raised when the result cache cannot be read or written."""
    def __init__(self, path: str, reason: str = ""):
        self.path = path
        self.reason = reason
        msg = f"Cache unavailable: {path}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
