#!/usr/bin/env python3
"""
specdesign command-line entry point.

Usage:
    python scripts/specdesign.py build --scenario s51-case1 --k1 1 --k2 2 --x0 0.7 --out build/s51
    python scripts/specdesign.py reproduce s53
"""

import os
import sys

# Add the repository root to the Python path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli.main import main


if __name__ == "__main__":
    sys.exit(main())
