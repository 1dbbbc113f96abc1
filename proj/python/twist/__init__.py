"""Dyadic twisted paraproduct toolkit."""

try:
    from twist._twist import *  # noqa: F401,F403
except ImportError:  # build tree: the module sits next to the package
    from _twist import *  # noqa: F401,F403
