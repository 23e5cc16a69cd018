"""Channel steering: broadcast extensions, assemblages, and SDP quantifiers."""

from ._chansteer import *  # noqa: F401,F403
from ._chansteer import __version__  # noqa: F401
