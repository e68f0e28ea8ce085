# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Change detectors: ADWIN and DDM."""

from .adwin import Adwin, BucketRow, adwin_update
from .ddm import Ddm, DriftLevel, ddm_update

__all__ = [
    "Adwin",
    "BucketRow",
    "Ddm",
    "DriftLevel",
    "adwin_update",
    "ddm_update",
]
