#!/usr/bin/env python3
"""
fbiharm - f-biharmonic verification engine

Usage:
    python main.py run --config config/cylinder.yaml [--out report.yaml]
    python main.py scenarios
    python main.py geom --scenario cylinder --point "1.0,0.2,0.3"
"""

import sys

from fbiharm.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
