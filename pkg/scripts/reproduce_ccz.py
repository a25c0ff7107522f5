#!/usr/bin/env python3
"""Reproduce the built-in 2d worked example end to end.

Runs the CCZ/X action pipeline on a 12x12 window, prints mu, u and the
tau class, optionally re-checks gauge and window stability, and writes a
JSON report.

    python scripts/reproduce_ccz.py [--window 12x12] [--margin 3]
        [--check-gauge 20] [--report ccz_report.json]
"""

import sys

from anomalion.cli import main

if __name__ == "__main__":
    args = sys.argv[1:]
    if "--report" not in args:
        args += ["--report", "ccz_report.json"]
    sys.exit(main(["reproduce-ccz", *args]))
