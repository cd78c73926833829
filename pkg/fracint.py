#!/usr/bin/env python3
"""
fracint command-line entry point

Usage:
    python fracint.py eval --alpha 0.5 --f const:1 --x 1
    python fracint.py verify --suite shift --seed 0
"""

import logging
import sys

from src.config import config
from src.cli import main

logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    stream=sys.stderr,
)

if __name__ == "__main__":
    sys.exit(main())
