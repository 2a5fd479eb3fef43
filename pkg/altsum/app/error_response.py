from typing import Any, Dict, Optional

from altsum.app.errors import AltsumError


def error_response(kind: str, message: str, context: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"error": {"kind": kind, "message": message, "context": {}}}
    if context:
        payload["error"]["context"] = {k: _plain(v) for k, v in context.items()}
    return payload


def from_exception(exc: AltsumError) -> Dict[str, Any]:
    return error_response(exc.kind, exc.message, exc.context)


def _plain(value: Any) -> Any:
    # Fractions and other exact scalars go out as strings.
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return f"{value.numerator}/{value.denominator}"
    return str(value)
