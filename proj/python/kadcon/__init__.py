"""Kademlia overlay simulator and vertex-connectivity analyzer."""

try:
    from kadcon._kadcon import *  # noqa: F401,F403  (installed wheel layout)
    from kadcon._kadcon import __doc__  # noqa: F401
except ImportError:  # build-tree layout: _kadcon.so on sys.path
    from _kadcon import *  # noqa: F401,F403
    from _kadcon import __doc__  # noqa: F401

__version__ = "0.1.0"
