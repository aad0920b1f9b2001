"""Channel assignment and power allocation for device-to-device underlay
networks.

Everything lives in the compiled core: fading models, the per-channel power
solvers, the relaxed assignment ascent and its discretizations, the
centralized/decentralized pipelines, the reference oracles (under
``d2dalloc.oracle``) and the experiment driver.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__, oracle  # noqa: F401
