import sys

from altsum.main import run

sys.exit(run())
