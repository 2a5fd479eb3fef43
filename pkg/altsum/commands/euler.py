from fractions import Fraction
from typing import Tuple

from altsum.app.schemas import AccelerationPayload, AccelSolvePayload, CommandRequest
from altsum.app.services.euler import (
    euler_enclosure,
    euler_partial_sum,
    first_n_euler,
    hybrid_enclosure,
    hybrid_sum,
)
from altsum.app.services.report_formatter import acceleration_payload, decimal_pairs, decimals, exact_str
from altsum.app.utils.parsing import eps_from_request, require, source_from_request


def register(sub, common, series_opt) -> None:
    p = sub.add_parser("euler", parents=[common, series_opt], help="Euler transform partial sum E_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--enclosure", action="store_true")
    p.add_argument("--backend", choices=["exact", "float64"], default="exact")

    p = sub.add_parser("hybrid", parents=[common, series_opt], help="S_m plus Euler-transformed tail")
    p.add_argument("--head", type=int, required=True)
    p.add_argument("--tail", type=int, required=True)
    p.add_argument("--enclosure", action="store_true")
    p.add_argument("--backend", choices=["exact", "float64"], default="exact")

    p = sub.add_parser("accel-solve", parents=[common, series_opt], help="first n with Euler bound <= eps")
    p.add_argument("--eps", default=None)
    p.add_argument("--places", type=int, default=None)


def _attach_enclosure(payload: AccelerationPayload, bounds: Tuple[Fraction, Fraction], digits: int) -> None:
    payload.enclosure = [exact_str(x) for x in bounds]
    payload.decimal = {**(payload.decimal or {}), "enclosure": decimal_pairs([bounds], digits)[0]}


def run_euler(req: CommandRequest):
    src = source_from_request(req)
    n = require(req, "n")
    payload = acceleration_payload(euler_partial_sum(src, n), req.digits)
    if req.enclosure:
        _attach_enclosure(payload, euler_enclosure(src, n), req.digits)
    return payload


def run_hybrid(req: CommandRequest):
    src = source_from_request(req)
    m, j = require(req, "head"), require(req, "tail")
    payload = acceleration_payload(hybrid_sum(src, m, j), req.digits)
    if req.enclosure:
        _attach_enclosure(payload, hybrid_enclosure(src, m, j), req.digits)
    return payload


def run_accel_solve(req: CommandRequest):
    src = source_from_request(req)
    eps = eps_from_request(req)
    n = first_n_euler(src, eps)
    bound = euler_partial_sum(src, n).error_upper
    return AccelSolvePayload(
        series=src.spec.id,
        eps=exact_str(eps),
        n=n,
        error_upper=exact_str(bound),
        decimal=decimals({"eps": eps, "error_upper": bound}, req.digits),
    )


HANDLERS = {"euler": run_euler, "hybrid": run_hybrid, "accel-solve": run_accel_solve}
