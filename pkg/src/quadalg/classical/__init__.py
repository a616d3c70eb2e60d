"""Classical phase-space models and their quantization."""

from .calibrate import *  # noqa: F401,F403
from .models import *  # noqa: F401,F403
from .phase import *  # noqa: F401,F403
from .quantize import *  # noqa: F401,F403
