from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from altsum.core.config import DEFAULT_DIGITS, MAX_DIGITS, SCHEMA_VERSION

Subcommand = Literal[
    "catalog", "sum", "table", "bounds", "solve", "euler", "hybrid", "accel-solve", "ladder", "constants"
]
OutputFormat = Literal["text", "json", "csv"]


# =========================
# Request
# =========================
class CommandRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    subcommand: Subcommand
    series: Optional[str] = None
    output: OutputFormat = "text"
    digits: int = Field(default=DEFAULT_DIGITS, ge=1, le=MAX_DIGITS)
    backend: Literal["exact", "float64"] = "exact"

    n: Optional[int] = Field(default=None, ge=0)
    k: Optional[int] = Field(default=None, ge=0)
    method: Optional[str] = None
    eps: Optional[str] = None
    places: Optional[int] = Field(default=None, ge=0)
    n_start: int = Field(default=1, ge=1)
    width: Optional[int] = Field(default=None, ge=1)
    max_order: Optional[int] = Field(default=None, ge=0)
    head: Optional[int] = Field(default=None, ge=0)
    tail: Optional[int] = Field(default=None, ge=1)
    enclosure: bool = False
    interval: Optional[int] = Field(default=None, ge=1)
    name: Optional[str] = None
    generate: bool = False


# =========================
# Payloads (rationals as "p/q" strings, decimals as strings)
# =========================
class Payload(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_: str = Field(default=SCHEMA_VERSION, alias="schema")


class SeriesOut(BaseModel):
    id: str
    family: str
    parameters: Dict[str, Any]
    display_name: str
    known_limit: Optional[str] = None


class CatalogPayload(Payload):
    series: List[SeriesOut]


class SumPayload(Payload):
    series: str
    n: int
    value: str
    backend: str
    decimal: Optional[Dict[str, str]] = None


class CellOut(BaseModel):
    r: int
    n: int
    value_exact: str
    value_decimal: str


class TablePayload(Payload):
    series: str
    n_start: int
    width: int
    max_order: int
    cells: List[CellOut]


class IntervalPayload(Payload):
    n: int
    method: str
    lower: str
    upper: str
    lower_strict: bool
    upper_strict: bool
    sign: int
    decimal: Optional[Dict[str, str]] = None


class TrueRemainderPayload(Payload):
    n: int
    value: str
    error_bound: str
    sign: int
    decimal: Optional[Dict[str, str]] = None


class SolvePayload(Payload):
    series: str
    eps: str
    method: str
    n: int
    certificate: Dict[str, Any]
    decimal: Optional[Dict[str, str]] = None


class AccelerationPayload(Payload):
    method: str
    value: str
    error_upper: str
    underestimates: bool
    terms_consumed: int
    backend: Optional[str] = None
    enclosure: Optional[List[str]] = None
    decimal: Optional[Dict[str, Any]] = None


class AccelSolvePayload(Payload):
    series: str
    eps: str
    n: int
    error_upper: str
    decimal: Optional[Dict[str, str]] = None


class LadderPayload(Payload):
    series: str
    n: int
    k: int
    value: str
    error_bound: str
    interval: Optional[List[str]] = None
    chain: Optional[List[List[str]]] = None
    decimal: Optional[Dict[str, Any]] = None


class ConstantPayload(BaseModel):
    name: str
    value: str
    abs_error_bound: str
    digits: int
    provenance: str
    decimal: Optional[Dict[str, str]] = None


class ErrorBody(BaseModel):
    kind: str
    message: str
    context: Dict[str, Any] = Field(default_factory=dict)


class ErrorPayload(Payload):
    error: ErrorBody


class ConstantsPayload(Payload):
    constants: List[ConstantPayload]


class DataLinesPayload(Payload):
    lines: List[str]
