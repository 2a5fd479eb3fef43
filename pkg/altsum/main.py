import argparse
import logging
import sys
from typing import List, Optional, Tuple

from pydantic import ValidationError

from altsum import __version__
from altsum.app.errors import AltsumError, UsageError
from altsum.app.schemas import CommandRequest
from altsum.app.services.report_formatter import error_payload, render, render_json
from altsum.commands import HANDLERS, MODULES
from altsum.core.config import DEFAULT_DIGITS
from altsum.core.log import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


# =========================
# Parser
# =========================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json", "csv"], default="text")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="decimal rendering precision")
    common.add_argument("-v", "--verbose", action="count", default=0)

    series_opt = argparse.ArgumentParser(add_help=False)
    series_opt.add_argument(
        "--series",
        required=True,
        help="pi4 | ln2 | eta2 | eta3 | lin:c,d | pow:s | file:<path>",
    )

    parser = argparse.ArgumentParser(
        prog="altsum",
        description="Alternating series: certified remainder bounds and Euler acceleration.",
    )
    parser.add_argument("--version", action="version", version=f"altsum {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for module in MODULES:
        module.register(sub, common, series_opt)
    return parser


# =========================
# Dispatch
# =========================
def _error_text(exc: AltsumError, output: str) -> str:
    if output == "json":
        return render_json(error_payload(exc))
    return f"error ({exc.kind}): {exc.message}"


def execute(req: CommandRequest) -> Tuple[int, str]:
    """
    Run one validated request. Returns (exit status, rendered output):
    0 with a payload, 2 on usage errors, 1 on domain errors
    (hypothesis refusal, unreachable eps, ...).
    """
    try:
        result = HANDLERS[req.subcommand](req)
        return EXIT_OK, render(result, req.output, req.digits)
    except UsageError as e:
        return EXIT_USAGE, _error_text(e, req.output)
    except AltsumError as e:
        logger.info("%s failed: %s", req.subcommand, e.message)
        return EXIT_DOMAIN, _error_text(e, req.output)


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse already printed usage (code 2) or help/version (code 0)
        return int(e.code or 0)

    configure_logging(args.verbose)
    fields = {k: v for k, v in vars(args).items() if k != "verbose"}

    try:
        req = CommandRequest(**fields)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ()))
        code, text = EXIT_USAGE, _error_text(UsageError(f"{where}: {first.get('msg')}", field=where), args.output)
    else:
        code, text = execute(req)

    # errors stay on stderr unless the caller asked for machine-readable output
    stream = sys.stdout if code == EXIT_OK or args.output == "json" else sys.stderr
    print(text, file=stream)
    return code
