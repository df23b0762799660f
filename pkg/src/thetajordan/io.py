"""JSON interchange (schema version 1). Exact numbers only: rationals are
strings ``"p/q"`` or ``"p"``, Gaussian rationals are ``{"re": .., "im": ..}``."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .appell_humbert import AHData
from .exact import GaussianRational

SCHEMA = 1
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class DocumentError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '<root>'}: {message}")
        self.path = path


def parse_rational(s: Any, path: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise DocumentError(path, f"expected a rational string, got {s!r}")
    s = str(s).strip()
    if not _RATIONAL.match(s):
        raise DocumentError(path, f"malformed rational {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise DocumentError(path, f"zero denominator in {s!r}") from None


def parse_gaussian(obj: Any, path: str) -> GaussianRational:
    if not isinstance(obj, dict) or set(obj) - {"re", "im"}:
        raise DocumentError(path, 'expected {"re": ..., "im": ...}')
    return GaussianRational(parse_rational(obj.get("re", "0"), path + ".re"),
                            parse_rational(obj.get("im", "0"), path + ".im"))


def _matrix(obj: Any, path: str, rows: int, cols: int) -> list[list[GaussianRational]]:
    if not isinstance(obj, list) or len(obj) != rows:
        raise DocumentError(path, f"expected {rows} rows")
    out = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{path}[{i}]", f"expected {cols} entries")
        out.append([parse_gaussian(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def parse_ah(obj: Any, path: str = "") -> AHData:
    def sub(key):
        return f"{path}.{key}" if path else key

    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object")
    mode = obj.get("mode")
    if mode not in ("gram", "period"):
        raise DocumentError(sub("mode"), 'must be "gram" or "period"')
    g = obj.get("g")
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise DocumentError(sub("g"), "must be a positive integer")
    n = 2 * g
    alpha = obj.get("alpha_t", ["0"] * n)
    if not isinstance(alpha, list) or len(alpha) != n:
        raise DocumentError(sub("alpha_t"), f"expected {n} rational strings")
    alpha_t = [parse_rational(t, f"{sub('alpha_t')}[{i}]") for i, t in enumerate(alpha)]
    try:
        if mode == "gram":
            gram = _matrix(obj.get("gram"), sub("gram"), n, n)
            return AHData(g, gram, alpha_t)
        period = _matrix(obj.get("period"), sub("period"), n, g)
        herm = _matrix(obj.get("hermitian"), sub("hermitian"), g, g)
        return AHData.from_period(period, herm, alpha_t)
    except DocumentError:
        raise
    except ValueError as exc:
        raise DocumentError(path, str(exc)) from None


def parse_document(obj: Any) -> dict:
    """Top-level document: ``{"schema": 1, ...AH fields...}`` and/or a ``pencil`` block."""
    if not isinstance(obj, dict):
        raise DocumentError("", "expected a JSON object")
    if obj.get("schema") != SCHEMA:
        raise DocumentError("schema", f"expected schema {SCHEMA}")
    out: dict = {}
    if "mode" in obj:
        out["data"] = parse_ah(obj)
    if "pencil" in obj:
        p = obj["pencil"]
        if not isinstance(p, dict):
            raise DocumentError("pencil", "expected an object")
        for key in ("base", "dominating"):
            if key not in p:
                raise DocumentError(f"pencil.{key}", "missing")
        out["base"] = parse_ah(p["base"], "pencil.base")
        out["dominating"] = parse_ah(p["dominating"], "pencil.dominating")
    if not out:
        raise DocumentError("", 'document needs "mode" fields or a "pencil" block')
    return out


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("", f"invalid JSON: {exc}") from None
    return parse_document(obj)


def rational_str(q) -> str:
    return str(Fraction(q))


def gaussian_obj(z: GaussianRational) -> dict:
    return {"re": rational_str(z.re), "im": rational_str(z.im)}


def ah_obj(d: AHData) -> dict:
    out: dict = {"g": d.g, "alpha_t": [rational_str(t) for t in d.alpha_t]}
    if d.period is not None and d.hermitian is not None:
        out["mode"] = "period"
        out["period"] = [[gaussian_obj(x) for x in row] for row in d.period]
        out["hermitian"] = [[gaussian_obj(x) for x in row] for row in d.hermitian]
    else:
        out["mode"] = "gram"
        out["gram"] = [[gaussian_obj(x) for x in row] for row in d.gram]
    return out


def document_obj(doc: dict) -> dict:
    out: dict = {"schema": SCHEMA}
    if "data" in doc:
        out.update(ah_obj(doc["data"]))
    if "base" in doc:
        out["pencil"] = {"base": ah_obj(doc["base"]), "dominating": ah_obj(doc["dominating"])}
    return out


def dumps(obj: Any) -> str:
    """Canonical formatting: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def serialize(doc: dict) -> str:
    return dumps(document_obj(doc))
