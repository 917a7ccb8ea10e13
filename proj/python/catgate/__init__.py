"""Cat-qubit photon-subtraction gate model, backed by the C++ core."""

try:
    from ._catgate import *  # noqa: F401,F403
    from ._catgate import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # In-tree builds place _catgate next to this package instead of inside it.
    from _catgate import *  # noqa: F401,F403

__version__ = "0.1.0"
