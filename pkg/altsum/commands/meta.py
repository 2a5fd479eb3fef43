from altsum.app.schemas import CommandRequest, ConstantsPayload, DataLinesPayload
from altsum.app.services.constants import GENERATORS, data_line
from altsum.app.services.numerics import reference_value
from altsum.app.services.report_formatter import constant_payload


def register(sub, common, series_opt) -> None:
    p = sub.add_parser("constants", parents=[common], help="reference constants")
    p.add_argument("--name", default=None, help="pi_over_4 | ln2 (default: all)")
    p.add_argument(
        "--generate",
        action="store_true",
        help="recompute data-file lines with --digits certified digits",
    )


def run_constants(req: CommandRequest):
    names = [req.name] if req.name else sorted(GENERATORS)
    if req.generate:
        return DataLinesPayload(lines=[data_line(name, req.digits) for name in names])
    return ConstantsPayload(constants=[constant_payload(reference_value(name), req.digits) for name in names])


HANDLERS = {"constants": run_constants}
