try:
    from ._core import *  # noqa: F401,F403
    from . import _core  # noqa: F401
except ImportError:  # built-tree layout: _core.so next to the package dir
    from _core import *  # noqa: F401,F403
    import _core  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
