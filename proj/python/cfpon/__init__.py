# SPDX-License-Identifier: Apache-2.0
"""Cell-free O-RAN over TWDM-PON power simulator and optimizer."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
