# Copyright 2026 The scene4d Authors
# SPDX-License-Identifier: Apache-2.0
"""Multi-view RGB-D trajectory rendering, occlusion-aware metrics and synthetic scenes."""

from ._core import *  # noqa: F401,F403
from ._core import Error, IoError, ValidationError, __version__  # noqa: F401
