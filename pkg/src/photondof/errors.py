"""Exception hierarchy shared by all photondof modules."""


class PhotonDofError(Exception):
    """Base class for every error raised by photondof."""


class SchemaError(PhotonDofError, ValueError):
    pass


class CapacityError(PhotonDofError):
    pass


class SymmetryError(PhotonDofError, ValueError):
    """A first-quantized tensor is not invariant under slot permutations.

    ``pair`` holds the worst-violating (tuple, swapped tuple) found.
    """

    def __init__(self, message, pair=None, violation=None):
        super().__init__(message)
        self.pair = pair
        self.violation = violation


class ZeroStateError(PhotonDofError, ValueError):
    pass


class ProfileError(PhotonDofError, ValueError):
    pass


class NetworkError(PhotonDofError, ValueError):
    pass


class GridError(PhotonDofError, ValueError):
    pass


class ParseError(PhotonDofError, ValueError):
    """Malformed input document; ``lineno`` is 1-based (None if not line-oriented)."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
