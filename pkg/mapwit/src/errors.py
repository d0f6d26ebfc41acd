class MapwitError(ValueError):
    """Base class for errors reported to users of the package."""
    pass


class GraphFormatError(MapwitError):
    """Malformed graph file or certificate document."""

    def __init__(self, message, line_number=None, line=None):
        if line_number is not None:
            message = 'line %d (%r): %s' % (line_number, line, message)
        super().__init__(message)
        self.line_number = line_number
        self.line = line


class DecompositionError(MapwitError):
    """Malformed or invalid tree-decomposition."""
    pass


class EmbeddingError(MapwitError):
    """Inconsistent rotation or position system."""
    pass


class OracleLimitError(MapwitError):
    """Graph too large for the brute-force oracle."""
    pass
