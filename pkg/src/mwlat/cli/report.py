"""JSON encoding of results.  Exact numbers become "p/q" strings; no floats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from ..algebra import NFElement, Poly, RatFunc, QQ
from ..weierstrass import FiberConfiguration, KodairaType, WeierstrassModel

__all__ = [
    "RunReport",
    "exact",
    "encode_element",
    "encode_poly",
    "encode_model",
    "encode_configuration",
    "encode_point",
    "report_schema",
    "validate_report",
]


def exact(q) -> str:
    """Rational number as "p/q" (denominator always written)."""
    q = Fraction(int(q.numerator), int(q.denominator))
    return f"{q.numerator}/{q.denominator}"


def encode_element(x: NFElement):
    """A rational as "p/q"; an element of a larger field as its coefficient vector."""
    if x.field is QQ:
        return exact(x.to_rational())
    return [exact(c) for c in x.rep]


def encode_poly(p: Poly) -> list:
    return [encode_element(c) for c in p.coeffs]


def _field_spec(k) -> str:
    from .parsing import format_field

    return format_field(k)


def encode_model(m: WeierstrassModel) -> dict:
    return {
        "text": m.to_string(),
        "affine": m.to_string(affine=True),
        "d": m.d,
        "field": _field_spec(m.field),
        "f": encode_poly(m.f),
        "g": encode_poly(m.g),
    }


def encode_type(t: KodairaType) -> str:
    return str(t)


def encode_configuration(c: FiberConfiguration) -> dict:
    return {
        "summary": c.describe(),
        "at_zero": str(c.at_zero),
        "at_infinity": str(c.at_infinity),
        "euler_sum": c.euler_sum(),
        "fibers": [
            {
                "place": fd.place.label(),
                "degree": fd.place.degree,
                "type": str(fd.type),
                "v_f": fd.v_f,
                "v_g": fd.v_g,
                "v_delta": fd.v_delta,
                "components": fd.components,
            }
            for fd in c.fibers
        ],
    }


def encode_ratfunc(r: RatFunc) -> dict:
    return {"num": encode_poly(r.num), "den": encode_poly(r.den)}


def encode_point(P) -> dict:
    if P.is_zero:
        return {"text": "O", "zero": True}
    return {"text": P.to_string(), "x": encode_ratfunc(P.x), "y": encode_ratfunc(P.y)}


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    text: str = ""
    exit_code: int = 0
    timing_ms: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "results": self.results,
               "exit_code": self.exit_code}
        if self.timing_ms is not None:
            out["timing_ms"] = self.timing_ms
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)


def report_schema() -> dict:
    res = resources.files("mwlat") / "data" / "report.schema.json"
    return json.loads(res.read_text())


def validate_report(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` does not match the shipped schema."""
    import jsonschema

    jsonschema.validate(doc, report_schema())
