"""Problem instance files: a single versioned JSON schema, exact numerals.

Every numeral in an instance file is parsed as an exact rational.
Strings may use decimal ("0.15") or fraction ("3/20") form; bare JSON
numbers are intercepted before float conversion, so "0.1" means one
tenth, not the nearest double.  Serialization writes fractions in p/q
form, which makes parse -> dump -> parse the identity.

Top-level sections (all optional, all holding named objects):

    schema      literal 1
    dimension   expected coordinate count, checked against every object
    tnorm       "min" | "product" | "lukasiewicz" (default "min")
    bounds      [lo, hi] semiring carrier (default [0, 1])
    grid_step   refinement step for non-min witness searches
    points      {"name": [c1, ..., cd]}
    pointsets   {"name": [[...], ...]}     ordered, duplicates kept
    polytopes   {"name": [[...], ...]}     generator lists
    boxes       {"name": {"lower": [...], "upper": [...]}}
    matrices    {"name": [[...], ...]}     (d+1) x d for diagram work
    hyperplanes {"name": {"a": [...], "b": [...]}}  length d+1 each
    families    {"name": ["polytopeA", "polytopeB", ...]}
    colorings   {"name": [[[...], ...], ...]}  d+1 generator lists
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .core import (
    DomainError,
    SemiringBounds,
    TNorm,
    UNIT,
    as_value,
    format_value,
)
from .geometry import Point
from .hull import Polytope
from .koenig import Matrix
from .semispaces import Hyperplane
from .separation import Box

SCHEMA_VERSION = 1

_SECTIONS = (
    "schema",
    "dimension",
    "tnorm",
    "bounds",
    "grid_step",
    "points",
    "pointsets",
    "polytopes",
    "boxes",
    "matrices",
    "hyperplanes",
    "families",
    "colorings",
)


def _fail(path: str, message: str) -> DomainError:
    return DomainError("%s: %s" % (path, message))


def _value(raw: Any, path: str) -> Fraction:
    try:
        return as_value(raw)
    except (ValueError, TypeError) as exc:
        raise _fail(path, str(exc)) from None


def _values(raw: Any, path: str) -> tuple[Fraction, ...]:
    if not isinstance(raw, Sequence) or isinstance(raw, str):
        raise _fail(path, "expected a list of numerals")
    return tuple(_value(v, "%s[%d]" % (path, i)) for i, v in enumerate(raw))


def _named(raw: Any, path: str) -> dict[str, Any]:
    if raw is None:
        return {}
    if not isinstance(raw, Mapping):
        raise _fail(path, "expected an object of named entries")
    for key in raw:
        if not isinstance(key, str):
            raise _fail(path, "entry names must be strings, got %r" % (key,))
    return dict(raw)


@dataclass(frozen=True)
class Instance:
    """Parsed instance file; all values exact, all names preserved."""

    tnorm: TNorm
    bounds: SemiringBounds = UNIT
    dimension: int | None = None
    grid_step: Fraction | None = None
    points: dict[str, Point] = field(default_factory=dict)
    pointsets: dict[str, tuple[Point, ...]] = field(default_factory=dict)
    polytopes: dict[str, Polytope] = field(default_factory=dict)
    boxes: dict[str, Box] = field(default_factory=dict)
    matrices: dict[str, Matrix] = field(default_factory=dict)
    hyperplanes: dict[str, Hyperplane] = field(default_factory=dict)
    families: dict[str, tuple[str, ...]] = field(default_factory=dict)
    colorings: dict[str, tuple[Polytope, ...]] = field(default_factory=dict)

    def lookup(self, section: str, name: str | None):
        """Entry by name, or the sole entry of the section when unnamed."""
        table: Mapping[str, Any] = getattr(self, section)
        if name is not None:
            if name not in table:
                raise DomainError(
                    "no %r in section %s; available: %s"
                    % (name, section, sorted(table) or "none")
                )
            return table[name]
        if len(table) == 1:
            return next(iter(table.values()))
        raise DomainError(
            "section %s has %d entries; pick one of %s by name"
            % (section, len(table), sorted(table))
        )

    def family_polytopes(self, name: str | None) -> tuple[Polytope, ...]:
        members = self.lookup("families", name)
        return tuple(self.lookup("polytopes", m) for m in members)


def _check_dim(dim: int | None, got: int, path: str) -> int:
    if dim is not None and got != dim:
        raise _fail(path, "expected dimension %d, got %d" % (dim, got))
    return got


def instance_from_dict(doc: Mapping[str, Any]) -> Instance:
    for key in doc:
        if key not in _SECTIONS:
            raise _fail(key, "unknown section (known: %s)" % (", ".join(_SECTIONS)))
    if doc.get("schema") != SCHEMA_VERSION:
        raise _fail("schema", "expected %d, got %r" % (SCHEMA_VERSION, doc.get("schema")))

    raw_bounds = doc.get("bounds")
    if raw_bounds is None:
        bounds = UNIT
    else:
        pair = _values(raw_bounds, "bounds")
        if len(pair) != 2:
            raise _fail("bounds", "expected [lo, hi]")
        bounds = SemiringBounds(pair[0], pair[1])

    tag = doc.get("tnorm", "min")
    try:
        tnorm = TNorm(tag, bounds)
    except ValueError as exc:
        raise _fail("tnorm", str(exc)) from None

    dimension = doc.get("dimension")
    if dimension is not None and (not isinstance(dimension, int) or dimension < 1):
        raise _fail("dimension", "expected a positive integer, got %r" % (dimension,))
    dim = dimension

    grid_step = None
    if doc.get("grid_step") is not None:
        grid_step = _value(doc["grid_step"], "grid_step")
        if grid_step <= 0:
            raise _fail("grid_step", "must be positive")

    def parse_point(raw: Any, path: str) -> Point:
        nonlocal dim
        coords = _values(raw, path)
        if not coords:
            raise _fail(path, "empty point")
        dim = _check_dim(dim, len(coords), path)
        return Point(coords)

    def parse_point_list(raw: Any, path: str) -> tuple[Point, ...]:
        if not isinstance(raw, Sequence) or isinstance(raw, str):
            raise _fail(path, "expected a list of points")
        return tuple(
            parse_point(row, "%s[%d]" % (path, i)) for i, row in enumerate(raw)
        )

    points = {
        name: parse_point(raw, "points.%s" % name)
        for name, raw in _named(doc.get("points"), "points").items()
    }
    pointsets = {
        name: parse_point_list(raw, "pointsets.%s" % name)
        for name, raw in _named(doc.get("pointsets"), "pointsets").items()
    }
    polytopes = {}
    for name, raw in _named(doc.get("polytopes"), "polytopes").items():
        path = "polytopes.%s" % name
        rows = parse_point_list(raw, path)
        if not rows:
            raise _fail(path, "a polytope needs at least one generator")
        polytopes[name] = Polytope(rows)

    boxes = {}
    for name, raw in _named(doc.get("boxes"), "boxes").items():
        path = "boxes.%s" % name
        if not isinstance(raw, Mapping) or set(raw) != {"lower", "upper"}:
            raise _fail(path, 'expected {"lower": [...], "upper": [...]}')
        try:
            boxes[name] = Box(
                parse_point(raw["lower"], path + ".lower"),
                parse_point(raw["upper"], path + ".upper"),
            )
        except ValueError as exc:
            raise _fail(path, str(exc)) from None

    matrices = {}
    for name, raw in _named(doc.get("matrices"), "matrices").items():
        path = "matrices.%s" % name
        if not isinstance(raw, Sequence) or isinstance(raw, str) or not raw:
            raise _fail(path, "expected a non-empty list of rows")
        rows = [_values(row, "%s[%d]" % (path, i)) for i, row in enumerate(raw)]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise _fail(path, "ragged rows")
        dim = _check_dim(dim, ncols, path)
        try:
            matrices[name] = Matrix(tuple(rows))
        except ValueError as exc:
            raise _fail(path, str(exc)) from None

    hyperplanes = {}
    for name, raw in _named(doc.get("hyperplanes"), "hyperplanes").items():
        path = "hyperplanes.%s" % name
        if not isinstance(raw, Mapping) or set(raw) != {"a", "b"}:
            raise _fail(path, 'expected {"a": [...], "b": [...]}')
        a = _values(raw["a"], path + ".a")
        b = _values(raw["b"], path + ".b")
        try:
            h = Hyperplane(a, b)
        except ValueError as exc:
            raise _fail(path, str(exc)) from None
        dim = _check_dim(dim, h.dim, path)
        hyperplanes[name] = h

    families = {}
    for name, raw in _named(doc.get("families"), "families").items():
        path = "families.%s" % name
        if not isinstance(raw, Sequence) or isinstance(raw, str):
            raise _fail(path, "expected a list of polytope names")
        for i, member in enumerate(raw):
            if not isinstance(member, str) or member not in polytopes:
                raise _fail(
                    "%s[%d]" % (path, i),
                    "unknown polytope %r; available: %s" % (member, sorted(polytopes)),
                )
        families[name] = tuple(raw)

    colorings = {}
    for name, raw in _named(doc.get("colorings"), "colorings").items():
        path = "colorings.%s" % name
        if not isinstance(raw, Sequence) or isinstance(raw, str) or not raw:
            raise _fail(path, "expected a non-empty list of color classes")
        classes = []
        for i, cls in enumerate(raw):
            rows = parse_point_list(cls, "%s[%d]" % (path, i))
            if not rows:
                raise _fail("%s[%d]" % (path, i), "empty color class")
            classes.append(Polytope(rows))
        colorings[name] = tuple(classes)

    # every coordinate must live inside the carrier
    def check_coords(coords: Sequence[Fraction], path: str) -> None:
        for c in coords:
            if not bounds.contains(c):
                raise _fail(path, "value %s outside bounds %s" % (c, bounds))

    for name, p in points.items():
        check_coords(p.coords, "points.%s" % name)
    for name, ps in pointsets.items():
        for i, p in enumerate(ps):
            check_coords(p.coords, "pointsets.%s[%d]" % (name, i))
    for name, poly in polytopes.items():
        check_coords(poly.coordinates(), "polytopes.%s" % name)
    for name, box in boxes.items():
        check_coords(box.coordinates(), "boxes.%s" % name)
    for name, classes in colorings.items():
        for i, cls in enumerate(classes):
            check_coords(cls.coordinates(), "colorings.%s[%d]" % (name, i))

    return Instance(
        tnorm=tnorm,
        bounds=bounds,
        dimension=dimension,
        grid_step=grid_step,
        points=points,
        pointsets=pointsets,
        polytopes=polytopes,
        boxes=boxes,
        matrices=matrices,
        hyperplanes=hyperplanes,
        families=families,
        colorings=colorings,
    )


def instance_to_dict(inst: Instance) -> dict[str, Any]:
    doc: dict[str, Any] = {"schema": SCHEMA_VERSION}
    if inst.dimension is not None:
        doc["dimension"] = inst.dimension
    if not inst.tnorm.is_min:
        doc["tnorm"] = inst.tnorm.tag
    if inst.bounds != UNIT:
        doc["bounds"] = [format_value(inst.bounds.lo), format_value(inst.bounds.hi)]
    if inst.grid_step is not None:
        doc["grid_step"] = format_value(inst.grid_step)

    def fmt_point(p: Point) -> list[str]:
        return [format_value(c) for c in p.coords]

    if inst.points:
        doc["points"] = {n: fmt_point(p) for n, p in inst.points.items()}
    if inst.pointsets:
        doc["pointsets"] = {
            n: [fmt_point(p) for p in ps] for n, ps in inst.pointsets.items()
        }
    if inst.polytopes:
        doc["polytopes"] = {
            n: [fmt_point(g) for g in poly.generators]
            for n, poly in inst.polytopes.items()
        }
    if inst.boxes:
        doc["boxes"] = {
            n: {"lower": fmt_point(b.lower), "upper": fmt_point(b.upper)}
            for n, b in inst.boxes.items()
        }
    if inst.matrices:
        doc["matrices"] = {
            n: [[format_value(v) for v in row] for row in m.rows]
            for n, m in inst.matrices.items()
        }
    if inst.hyperplanes:
        doc["hyperplanes"] = {
            n: {
                "a": [format_value(v) for v in h.a],
                "b": [format_value(v) for v in h.b],
            }
            for n, h in inst.hyperplanes.items()
        }
    if inst.families:
        doc["families"] = {n: list(members) for n, members in inst.families.items()}
    if inst.colorings:
        doc["colorings"] = {
            n: [[fmt_point(g) for g in cls.generators] for cls in classes]
            for n, classes in inst.colorings.items()
        }
    return doc


def parse_raw(text: str) -> dict[str, Any]:
    """JSON text to a raw section dict with exact numerals, unvalidated."""
    try:
        doc = json.loads(text, parse_float=as_value)
    except json.JSONDecodeError as exc:
        raise DomainError("invalid JSON at line %d column %d: %s"
                          % (exc.lineno, exc.colno, exc.msg)) from None
    if not isinstance(doc, dict):
        raise DomainError("instance file must be a JSON object")
    return doc


def loads_instance(text: str) -> Instance:
    return instance_from_dict(parse_raw(text))


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_instance(text)


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"
