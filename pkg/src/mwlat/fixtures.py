"""Bundled generator-family fixtures: a model, a field tower, a seed section, recipes.

Coefficients of the seed are listed from t^0 upward.  Each coefficient is
either an expression in the generator names (``"-c^2"``) or a flat vector of
``"p/q"`` strings in the tower's coefficient basis.  Nothing in a fixture is
trusted: :func:`load_fixture` rebuilds the field and checks that the seed lies
on the curve before anything else touches it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import NFElement, NumberField, Poly, RatFunc
from .cli.parsing import ParseError, parse_element, parse_field, parse_model, parse_poly, parse_recipe
from .mordell_weil import (
    FFPoint,
    GaloisSectionAction,
    GeneratorFamily,
    make_action,
    on_curve,
)
from .weierstrass import WeierstrassModel

__all__ = [
    "Fixture",
    "FixtureError",
    "FixtureValidationError",
    "available_fixtures",
    "load_fixture",
    "validate_fixture",
]


class FixtureError(ValueError):
    """Fixture missing or malformed."""


class FixtureValidationError(ValueError):
    """Fixture parses but its mathematics does not check out."""


@dataclass
class Fixture:
    name: str
    description: str
    model: WeierstrassModel
    p: int
    field: NumberField
    zeta: NFElement | None
    seed_name: str
    seed: FFPoint
    recipes: dict[str, list[int]]
    recipe_text: dict[str, str]
    expected_count: int
    max_deg_x: int
    stated_trace: FFPoint | None
    stated_recipes: dict[str, list[int]] | None = None
    stated_text: dict[str, str] = field(default_factory=dict)

    def action(self) -> GaloisSectionAction:
        if self.zeta is None:
            raise FixtureValidationError(f"fixture {self.name!r} has no p-th root of unity")
        return make_action(self.model, self.p, self.zeta)

    def family(self, stated: bool = False) -> GeneratorFamily:
        rec = self.stated_recipes if stated else self.recipes
        if rec is None:
            raise FixtureError(f"fixture {self.name!r} has no stated recipe variant")
        return GeneratorFamily(self.seed, rec, self.expected_count, self.max_deg_x)


def available_fixtures() -> list[str]:
    root = resources.files("mwlat") / "data"
    return sorted(p.name[:-5] for p in root.iterdir()
                  if p.name.endswith(".json") and not p.name.endswith(".schema.json"))


def _read(name_or_path: str) -> dict:
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        text = path.read_text()
    else:
        res = resources.files("mwlat") / "data" / f"{name_or_path}.json"
        if not res.is_file():
            raise FixtureError(
                f"no fixture {name_or_path!r}; available: {', '.join(available_fixtures())}"
            )
        text = res.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureError(f"fixture {name_or_path!r} is not valid JSON: {e}") from None


def _coefficient(k: NumberField, c) -> NFElement:
    if isinstance(c, str):
        return parse_element(c, k)
    if isinstance(c, list):
        return k.from_rep(c)
    raise FixtureError(f"coefficient {c!r} is neither an expression nor a vector")


def _poly(k: NumberField, coeffs) -> Poly:
    return Poly(k, [_coefficient(k, c) for c in coeffs])


def _recipes(pairs, p: int, seed_name: str) -> tuple[dict, dict]:
    defined = {seed_name: [1] + [0] * (p - 1)}
    vecs, text = {}, {}
    for name, expr in pairs:
        vec = parse_recipe(expr, p, defined)
        defined[name] = vec
        vecs[name] = vec
        text[name] = expr
    return vecs, text


def load_fixture(name_or_path: str, validate: bool = True) -> Fixture:
    data = _read(name_or_path)
    try:
        k = parse_field(data.get("field"))
        model = parse_model(data["model"])
        p = int(data["p"])
        seed_name = data.get("seed_name", "Q1")
        seed = FFPoint.from_polys(_poly(k, data["seed"]["x"]), _poly(k, data["seed"]["y"]))
        recipes, text = _recipes(data["recipes"], p, seed_name)
        stated, stated_text = None, {}
        if "stated_recipes" in data:
            stated, stated_text = _recipes(data["stated_recipes"], p, seed_name)
        zeta = parse_element(data["zeta"], k) if data.get("zeta") else None
        stated_trace = None
        if data.get("stated_trace"):
            st = data["stated_trace"]
            stated_trace = FFPoint(
                RatFunc(parse_poly(st["x"][0], k), parse_poly(st["x"][1], k)),
                RatFunc(parse_poly(st["y"][0], k), parse_poly(st["y"][1], k)),
                k,
            )
    except ParseError as e:
        raise FixtureError(f"fixture {name_or_path!r}: {e}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise FixtureError(f"fixture {name_or_path!r} is malformed: {e}") from None

    fx = Fixture(
        name=data.get("name", str(name_or_path)),
        description=data.get("description", ""),
        model=model,
        p=p,
        field=k,
        zeta=zeta,
        seed_name=seed_name,
        seed=seed,
        recipes=recipes,
        recipe_text=text,
        expected_count=int(data["expected_count"]),
        max_deg_x=int(data["max_deg_x"]),
        stated_trace=stated_trace,
        stated_recipes=stated,
        stated_text=stated_text,
    )
    if validate:
        validate_fixture(fx)
    return fx


def validate_fixture(fx: Fixture) -> None:
    """On-curve check for the seed, then sanity checks on the root of unity."""
    if not on_curve(fx.model, fx.seed):
        raise FixtureValidationError(
            f"fixture {fx.name!r}: seed {fx.seed_name} does not satisfy "
            f"{fx.model.to_string(affine=True)}"
        )
    if fx.zeta is not None:
        if fx.zeta == fx.field.one or fx.zeta ** fx.p != fx.field.one:
            raise FixtureValidationError(
                f"fixture {fx.name!r}: zeta is not a primitive {fx.p}-th root of unity"
            )
