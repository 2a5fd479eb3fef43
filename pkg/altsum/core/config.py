import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

SCHEMA_VERSION = "altsum/1"

# Guards
EXACT_TERM_GUARD = 10**6
FLOAT_TERM_GUARD = 10**8
ORDER_GUARD = 64
MAX_DIGITS = 1000
DEFAULT_DIGITS = 12

# Reference constants
CERTIFIED_DIGITS_MIN = 50
TRUE_EPS_FLOOR_EXP = 40

DEFAULT_CONSTANTS_FILE = Path(__file__).resolve().parent.parent / "app" / "data" / "constants.txt"


def constants_path() -> Path:
    """
    Data file with the reference constants.
    ALTSUM_CONSTANTS_FILE overrides the bundled file (read on every call).
    """
    override = os.getenv("ALTSUM_CONSTANTS_FILE", "").strip()
    return Path(override) if override else DEFAULT_CONSTANTS_FILE
