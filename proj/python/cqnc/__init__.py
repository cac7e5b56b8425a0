"""Force-noise spectral densities of a squeezed-input optomechanical force
sensor with a negative-mass atomic ensemble cancelling the backaction.

Thin wrapper over the compiled extension; every symbol lives in ``_cqnc``.
"""

from ._cqnc import *  # noqa: F401,F403

__version__ = "1.0.0"
