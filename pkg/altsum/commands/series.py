from altsum.app.schemas import CommandRequest, SumPayload
from altsum.app.services.differences import build_table
from altsum.app.services.report_formatter import decimals, exact_str
from altsum.app.services.terms import catalog, partial_sum
from altsum.app.utils.parsing import require, source_from_request


def register(sub, common, series_opt) -> None:
    p = sub.add_parser("catalog", parents=[common], help="list the built-in series")

    p = sub.add_parser("sum", parents=[common, series_opt], help="partial sum S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--backend", choices=["exact", "float64"], default="exact")

    p = sub.add_parser("table", parents=[common, series_opt], help="forward difference table")
    p.add_argument("--n-start", dest="n_start", type=int, default=1)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--max-order", dest="max_order", type=int, required=True)
    p.add_argument("--backend", choices=["exact", "float64"], default="exact")


def list_catalog(req: CommandRequest):
    return catalog()


def run_sum(req: CommandRequest):
    src = source_from_request(req)
    n = require(req, "n")
    value = partial_sum(src, n)
    return SumPayload(
        series=src.spec.id,
        n=n,
        value=exact_str(value),
        backend=src.backend,
        decimal=decimals({"value": value}, req.digits),
    )


def run_table(req: CommandRequest):
    src = source_from_request(req)
    return build_table(src, req.n_start, require(req, "width"), require(req, "max_order"))


HANDLERS = {"catalog": list_catalog, "sum": run_sum, "table": run_table}
