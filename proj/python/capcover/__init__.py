"""Exact LP rounding for metric capacitated covering."""

try:
    from ._capcover import *  # noqa: F401,F403
    from ._capcover import __doc__ as _doc
except ImportError:
    # development layout: the extension sits on sys.path next to the build tree
    from _capcover import *  # noqa: F401,F403
    from _capcover import __doc__ as _doc

__doc__ = _doc

__all__ = [
    "generate",
    "from_set_cover",
    "validate",
    "lp_solve",
    "solve",
    "optimal_size",
    "greedy_size",
    "verify",
    "ParseError",
    "InstanceValidationError",
    "InvariantError",
]
