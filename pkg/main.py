#!/usr/bin/env python3
"""
Main entry point for calg.
Runs one analysis on a problem file, the conjecture harness, or the report server.
"""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main())
