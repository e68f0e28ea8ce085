# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
