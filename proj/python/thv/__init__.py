"""Exact tree-pair arithmetic and fixed-point certificates for Thompson's
groups F, T, V and the Nekrashevych-Rover groups V_q(G)."""

try:
    from ._thv import *  # noqa: F401,F403
except ImportError:  # running against a build tree where _thv is top-level
    from _thv import *  # noqa: F401,F403
