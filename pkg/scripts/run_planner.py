#!/usr/bin/env python3
"""Run the inspection planner from a source checkout without installing it"""
import sys
from pathlib import Path

# Add repository root to Python path
src_path = Path(__file__).parent.parent
sys.path.insert(0, str(src_path))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
