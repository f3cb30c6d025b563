"""
Launcher for the rational-cycles command line.

Usage
-----
    python run_cycles.py search --k 13 --depth 500
    python run_cycles.py atable --k-max 2000 --depths 20,50,100,200,400 --jobs 8 --format csv --out atable.csv
    python run_cycles.py verify --bsl-exhaustive 12 --bsl-random 1000 --prop32-max 20

Defaults for --depth, --step-cap and --jobs can be set in a .env file
(CYCLES_DEPTH, CYCLES_STEP_CAP, CYCLES_JOBS); see rational_cycles/config.py.
"""

import sys

from rational_cycles.cli import main

if __name__ == "__main__":
    sys.exit(main())
