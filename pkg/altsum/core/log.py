import logging
import sys

_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: int = 0) -> None:
    """
    CLI-only logging setup:
    - 0 -> WARNING, 1 -> INFO, 2+ -> DEBUG
    - records go to stderr so stdout stays machine-readable
    """
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG

    root = logging.getLogger("altsum")
    root.setLevel(level)
    if not any(getattr(h, "_altsum", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._altsum = True  # type: ignore[attr-defined]
        root.addHandler(handler)
