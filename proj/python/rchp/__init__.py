from ._rchp import *  # noqa: F401,F403
from ._rchp import __doc__  # noqa: F401
