from typing import Any, Dict

from altsum.app.schemas import CommandRequest, LadderPayload, SolvePayload
from altsum.app.services.bounds import (
    first_n_guaranteed,
    nested_chain,
    remainder_interval,
    t_error_bound,
    t_interval,
    t_value,
    true_remainder,
)
from altsum.app.services.report_formatter import (
    decimal_pairs,
    decimals,
    exact_str,
    interval_payload,
    payload_dict,
    true_remainder_payload,
)
from altsum.app.utils.parsing import eps_from_request, method_from_request, require, source_from_request


def register(sub, common, series_opt) -> None:
    p = sub.add_parser("bounds", parents=[common, series_opt], help="certified remainder interval")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--method", default=None, help="leibniz | jb | jb:k (default jb)")

    p = sub.add_parser("solve", parents=[common, series_opt], help="first n reaching eps")
    p.add_argument("--eps", default=None, help="exact literal, e.g. 1/20000 or 5e-5")
    p.add_argument("--places", type=int, default=None, help="decimal places of accuracy")
    p.add_argument("--method", default="jb:0", help="leibniz | jb:k | true")

    p = sub.add_parser("ladder", parents=[common, series_opt], help="corrected partial sums T^(k)_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--interval", type=int, default=None, help="also show [T_2r, T_2r-1] and its chain")


def run_bounds(req: CommandRequest):
    src = source_from_request(req)
    return remainder_interval(src, require(req, "n"), method_from_request(req, "jb"))


def _certificate(src, n, method, digits):
    if method.name == "true":
        body = payload_dict(true_remainder_payload(true_remainder(src, n), digits))
    else:
        body = payload_dict(interval_payload(remainder_interval(src, n, method), digits))
    body.pop("schema", None)
    return body


def run_solve(req: CommandRequest):
    src = source_from_request(req)
    eps = eps_from_request(req)
    method = method_from_request(req, "jb:0")
    n = first_n_guaranteed(src, eps, method)
    return SolvePayload(
        series=src.spec.id,
        eps=exact_str(eps),
        method=method.tag,
        n=n,
        certificate=_certificate(src, n, method, req.digits),
        decimal=decimals({"eps": eps}, req.digits),
    )


def run_ladder(req: CommandRequest):
    src = source_from_request(req)
    n, k = require(req, "n"), req.k or 0
    tv = t_value(src, n, k)
    bound = t_error_bound(src, n, k)
    decimal: Dict[str, Any] = dict(decimals({"value": tv.value, "error_bound": bound}, req.digits) or {})
    interval = chain = None
    if req.interval is not None:
        lo, hi = t_interval(src, req.interval, k)
        links = nested_chain(src, req.interval, k)
        interval = [exact_str(lo), exact_str(hi)]
        chain = [[exact_str(a), exact_str(b)] for a, b in links]
        decimal["interval"] = decimal_pairs([(lo, hi)], req.digits)[0]
        decimal["chain"] = decimal_pairs(links, req.digits)
    return LadderPayload(
        series=src.spec.id,
        n=n,
        k=k,
        value=exact_str(tv.value),
        error_bound=exact_str(bound),
        interval=interval,
        chain=chain,
        decimal=decimal,
    )


HANDLERS = {"bounds": run_bounds, "solve": run_solve, "ladder": run_ladder}
