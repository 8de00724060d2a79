"""
Main entry point for the character-sum laboratory.

This module launches the command-line interface.
"""

import sys

from charmax.experiments.cli import main


if __name__ == "__main__":
    sys.exit(main())
