"""Laser-flash Bayesian inference with a stochastic Galerkin FEM surrogate.

The heavy lifting lives in the compiled extension ``lfa._core``; this package
re-exports everything so ``import lfa`` works both for an installed wheel and
for an in-tree build directory placed on ``PYTHONPATH``.
"""

try:
    from lfa._core import *  # noqa: F401,F403
    from lfa import _core as core
except ImportError:  # in-tree build: _core.so sits directly on sys.path
    from _core import *  # noqa: F401,F403
    import _core as core

__all__ = [name for name in dir(core) if not name.startswith("_")]
del core
