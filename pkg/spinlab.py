#!/usr/bin/env python3
"""
spinlab runner

Same as the installed `spinlab` command, usable from a checkout:

    python spinlab.py run --suite rigidity --n 2 --radius 1 --out outputs/rigidity.json
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
