"""Strong-coupling cavity QED simulator: Jaynes-Cummings dynamics, Ramsey
pulse algebra, dispersive phase gates, and quantum-jump QND photon tracking
on a truncated Fock space."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
