"""
trifst - Main Entry Point
"""
import sys
from pathlib import Path

# Add trifst to path
sys.path.insert(0, str(Path(__file__).parent))

from trifst.cli import main


if __name__ == "__main__":
    sys.exit(main())
