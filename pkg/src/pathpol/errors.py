"""Exception types shared across the package.

The CLI maps these onto its exit codes, so new error conditions should
reuse one of the classes below rather than raising bare ValueErrors.
"""


class PathpolError(Exception):
    """Base class for all package-specific errors."""


class NonUnitaryError(PathpolError):
    """Input matrix fails the unitarity check beyond the allowed residual."""


class DimensionError(PathpolError):
    """Dimension unsupported by the requested operation (e.g. odd N for
    polarization backends, or a size mismatch between two operands)."""


class SchedulingError(PathpolError):
    """Rotation order cannot be packed into the rectangular layer layout."""


class NetlistError(PathpolError):
    """Malformed netlist: overlapping elements in a stage, unknown paths,
    unknown element variants, or a broken serialization."""


class ParseError(PathpolError):
    """Input file is unreadable or not well-formed (I/O and JSON layer)."""
