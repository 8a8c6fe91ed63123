"""Monte Carlo evaluation of uplink slicing schemes."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # build tree: the extension sits next to this package
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
