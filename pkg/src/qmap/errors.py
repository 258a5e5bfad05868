"""Exception types shared across the package."""


class QmapError(Exception):
    """Base class for all qmap errors."""


class QasmSyntaxError(QmapError):
    """Circuit source rejected; carries the 1-based line/column of the statement."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class ArchError(QmapError):
    """Invalid architecture description (topology, dimensions, file syntax)."""


class CapacityError(QmapError):
    """Circuit does not fit the machine under the active capacity rule."""


class RoutingDeadlockError(QmapError):
    """A cross-core gate cannot be resolved with the available free slots."""


class VerificationError(QmapError):
    """A mapped circuit failed verification."""


class OracleGuardError(QmapError):
    """Instance exceeds the exhaustive-search size guard."""


class MappedFormatError(QmapError):
    """Malformed mapped-circuit file."""


class ManifestError(QmapError):
    """Run manifest is unreadable or its recorded digests no longer match."""
