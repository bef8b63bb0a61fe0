#!/usr/bin/env python3
"""Regenerate every bound table next to its frozen reference values.

Thin wrapper over the library so the comparison logic lives in one place;
equivalent to `connlab report` but importable and exit-code friendly for
shell pipelines.  Pass --seed to restamp the random analogue tables and
--format csv/json for machine-readable output.
"""

import sys

from connlab.cli import main

if __name__ == "__main__":
    sys.exit(main(["report", *sys.argv[1:]]))
