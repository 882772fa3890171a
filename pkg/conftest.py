import sys
from pathlib import Path

# tests and walkthroughs import psicong from the checkout
sys.path.insert(0, str(Path(__file__).resolve().parent))
