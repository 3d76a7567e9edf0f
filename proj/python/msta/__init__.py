"""Even multiparticle spacetime algebra toolkit for dipolar-coupled spins."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__, __version__, oracle, run  # noqa: F401
