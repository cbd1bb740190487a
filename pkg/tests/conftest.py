import os
import sys

# make tests/oracles importable as a plain package from any invocation dir
sys.path.insert(0, os.path.dirname(__file__))
