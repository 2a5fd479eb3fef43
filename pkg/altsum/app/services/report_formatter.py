from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from altsum.app.error_response import from_exception
from altsum.app.errors import AltsumError
from altsum.app.schemas import (
    AccelerationPayload,
    CatalogPayload,
    CellOut,
    ConstantPayload,
    ConstantsPayload,
    DataLinesPayload,
    ErrorPayload,
    IntervalPayload,
    Payload,
    SeriesOut,
    TablePayload,
    TrueRemainderPayload,
)
from altsum.app.services.bounds import RemainderInterval, TrueRemainder
from altsum.app.services.differences import DifferenceTable
from altsum.app.services.euler import AccelerationResult
from altsum.app.services.numerics import ReferenceConstant, decimal_string, format_rational
from altsum.app.services.terms import ReciprocalLinear, ReciprocalPower, Sampled, SeriesSpec


def exact_str(x: Any) -> str:
    # floats are dyadic rationals, so Fraction(x) is exact here too
    return format_rational(Fraction(x))


def decimal_str(x: Any, digits: int) -> str:
    return decimal_string(Fraction(x), digits)


def decimals(values: Dict[str, Any], digits: Optional[int]) -> Optional[Dict[str, str]]:
    if digits is None:
        return None
    return {k: decimal_str(v, digits) for k, v in values.items()}


def decimal_pairs(pairs: Iterable[Any], digits: int) -> List[List[str]]:
    return [[decimal_str(lo, digits), decimal_str(hi, digits)] for lo, hi in pairs]


# =========================
# Domain result -> payload
# =========================
def series_out(spec: SeriesSpec) -> SeriesOut:
    family = spec.family
    params: Dict[str, Any]
    if isinstance(family, ReciprocalLinear):
        params = {"c": exact_str(family.c), "d": exact_str(family.d)}
    elif isinstance(family, ReciprocalPower):
        params = {"s": exact_str(family.s), "offset": family.offset}
    elif isinstance(family, Sampled):
        params = {"length": len(family.values)}
    else:
        params = {}
    return SeriesOut(
        id=spec.id,
        family=family.kind,
        parameters=params,
        display_name=spec.display_name,
        known_limit=spec.known_limit,
    )


def interval_payload(iv: RemainderInterval, digits: Optional[int] = None) -> IntervalPayload:
    return IntervalPayload(
        n=iv.n,
        method=iv.method.tag,
        lower=exact_str(iv.lower),
        upper=exact_str(iv.upper),
        lower_strict=iv.lower_strict,
        upper_strict=iv.upper_strict,
        sign=iv.sign,
        decimal=decimals({"lower": iv.lower, "upper": iv.upper}, digits),
    )


def true_remainder_payload(tr: TrueRemainder, digits: Optional[int] = None) -> TrueRemainderPayload:
    return TrueRemainderPayload(
        n=tr.n,
        value=exact_str(tr.value),
        error_bound=exact_str(tr.error_bound),
        sign=tr.sign,
        decimal=decimals({"value": tr.value}, digits),
    )


def acceleration_payload(res: AccelerationResult, digits: Optional[int] = None) -> AccelerationPayload:
    return AccelerationPayload(
        method=res.tag,
        value=exact_str(res.value),
        error_upper=exact_str(res.error_upper),
        underestimates=res.underestimates,
        terms_consumed=res.terms_consumed,
        backend=res.backend if digits is not None else None,
        decimal=decimals({"value": res.value, "error_upper": res.error_upper}, digits),
    )


def table_payload(table: DifferenceTable, digits: int) -> TablePayload:
    return TablePayload(
        series=table.source.spec.id,
        n_start=table.n_start,
        width=table.width,
        max_order=table.max_order,
        cells=[
            CellOut(r=r, n=n, value_exact=exact_str(v), value_decimal=decimal_str(v, digits))
            for r, n, v in table.cells()
        ],
    )


def constant_payload(c: ReferenceConstant, digits: Optional[int] = None) -> ConstantPayload:
    return ConstantPayload(
        name=c.name,
        value=exact_str(c.value),
        abs_error_bound=exact_str(c.abs_error_bound),
        digits=c.digits,
        provenance=c.provenance,
        decimal=decimals({"value": c.value, "abs_error_bound": c.abs_error_bound}, digits),
    )


def error_payload(exc: AltsumError) -> ErrorPayload:
    return ErrorPayload.model_validate(from_exception(exc))


def to_payload(result: Any, digits: Optional[int] = None) -> Payload:
    if isinstance(result, Payload):
        return result
    if isinstance(result, RemainderInterval):
        return interval_payload(result, digits)
    if isinstance(result, TrueRemainder):
        return true_remainder_payload(result, digits)
    if isinstance(result, AccelerationResult):
        return acceleration_payload(result, digits)
    if isinstance(result, DifferenceTable):
        return table_payload(result, digits if digits is not None else 12)
    if isinstance(result, ReferenceConstant):
        return ConstantsPayload(constants=[constant_payload(result, digits)])
    if isinstance(result, AltsumError):
        return error_payload(result)
    if isinstance(result, list) and all(isinstance(s, SeriesSpec) for s in result):
        return CatalogPayload(series=[series_out(s) for s in result])
    raise TypeError(f"no payload for {type(result).__name__}")


# =========================
# Rendering
# =========================
def payload_dict(payload: Payload) -> Dict[str, Any]:
    return payload.model_dump(mode="json", by_alias=True, exclude_none=True)


def render_json(result: Any, digits: Optional[int] = None) -> str:
    """Canonical JSON: field order fixed by the payload model, rationals as "p/q" strings."""
    return json.dumps(payload_dict(to_payload(result, digits)), indent=2, ensure_ascii=False)


def _flatten(prefix: str, value: Any) -> Iterable[List[str]]:
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(f"{prefix}.{k}" if prefix else k, v)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            yield from _flatten(f"{prefix}[{i}]", v)
    elif isinstance(value, bool):
        yield [prefix, "true" if value else "false"]
    else:
        yield [prefix, str(value)]


def render_csv(payload: Payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(payload, TablePayload):
        writer.writerow(["r", "n", "value_exact", "value_decimal"])
        for cell in payload.cells:
            writer.writerow([cell.r, cell.n, cell.value_exact, cell.value_decimal])
    else:
        writer.writerow(["field", "value"])
        for row in _flatten("", payload_dict(payload)):
            writer.writerow(row)
    return buf.getvalue()


def render_text(payload: Payload) -> str:
    if isinstance(payload, TablePayload):
        return _table_text(payload)
    if isinstance(payload, CatalogPayload):
        return "\n".join(f"{s.id:<8} {s.family:<18} {s.display_name}" for s in payload.series)
    if isinstance(payload, ErrorPayload):
        return f"error ({payload.error.kind}): {payload.error.message}"
    if isinstance(payload, DataLinesPayload):
        return "\n".join(payload.lines)

    lines: List[str] = []
    for key, value in _flatten("", payload_dict(payload)):
        if key == "schema":
            continue
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _table_text(payload: TablePayload) -> str:
    rows: Dict[int, List[CellOut]] = {}
    for cell in payload.cells:
        rows.setdefault(cell.r, []).append(cell)
    width = max((len(c.value_decimal) for c in payload.cells), default=0)
    lines = [f"{payload.series}  n = {payload.n_start}..{payload.n_start + payload.width - 1}"]
    for r, cells in sorted(rows.items()):
        lines.append(f"r={r:<3} " + " ".join(c.value_decimal.rjust(width) for c in cells))
    return "\n".join(lines)


def render(result: Any, output: str, digits: Optional[int] = None) -> str:
    payload = to_payload(result, digits)
    if output == "json":
        return json.dumps(payload_dict(payload), indent=2, ensure_ascii=False)
    if output == "csv":
        return render_csv(payload)
    return render_text(payload)
