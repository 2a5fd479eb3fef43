from fractions import Fraction
from typing import Any

from altsum.app.errors import UsageError
from altsum.app.schemas import CommandRequest
from altsum.app.services.bounds import Method, parse_method
from altsum.app.services.numerics import parse_rational, places_to_eps
from altsum.app.services.terms import TermSource, parse_series


def require(req: CommandRequest, field: str) -> Any:
    value = getattr(req, field)
    if value is None:
        flag = "--" + field.replace("_", "-")
        raise UsageError(f"{req.subcommand} needs {flag}", flag=flag)
    return value


def source_from_request(req: CommandRequest) -> TermSource:
    return parse_series(require(req, "series"), req.backend)


def eps_from_request(req: CommandRequest) -> Fraction:
    """--eps as an exact literal (`1/20000`, `5e-5`) or --places d -> 5*10^-(d+1)."""
    if req.eps is not None and req.places is not None:
        raise UsageError("give either --eps or --places, not both")
    if req.places is not None:
        return places_to_eps(req.places)
    eps = parse_rational(require(req, "eps"))
    if eps <= 0:
        raise UsageError("eps must be positive", eps=req.eps)
    return eps


def method_from_request(req: CommandRequest, default: str) -> Method:
    text = (req.method or default).strip().lower()
    if text in ("jb", "johnsonbaugh"):
        text = f"jb:{req.k or 0}"
    return parse_method(text)
