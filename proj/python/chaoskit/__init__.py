"""Heat-Hermite polynomials, Wiener chaos norms and Widder martingales."""

from ._chaoskit import *  # noqa: F401,F403
from ._chaoskit import SCHEMA_VERSION, run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
