"""Design files: the on-disk JSON schema and deterministic serialization.

Schema::

    {
      "d": 3,
      "mode": "explicit" | "orbit",
      "points": [[0.659, "1/4", ...], ...],
      "group": "sym" | "cyc" | {"generators": [[2, 3, 1], ...]}
    }

"points" holds the explicit points or, in orbit mode, the base points.
Rational strings "p/q" parse exactly; plain numbers stay floats.  "group" is
required in orbit mode and rejected in explicit mode.  Generator arrays are
1-indexed image lists.
"""

from __future__ import annotations

import json
import json.encoder

from .core import DesignSet, PointVector, parse_scalar, scalar_to_json
from .perm import PermGroup, perm_from_json, perm_to_json


class DesignFileError(ValueError):
    """Malformed design file content."""


def _group_from_json(spec, d: int) -> PermGroup:
    if spec == "sym":
        return PermGroup.symmetric(d)
    if spec == "cyc":
        return PermGroup.cyclic(d)
    if isinstance(spec, dict) and "generators" in spec:
        try:
            gens = [perm_from_json(g) for g in spec["generators"]]
        except (ValueError, TypeError) as e:
            raise DesignFileError(f"bad generator: {e}") from None
        if any(len(g) != d for g in gens):
            raise DesignFileError("generator length does not match d")
        return PermGroup.generated(d, gens)
    raise DesignFileError(f"unrecognized group spec {spec!r}")


def _group_to_json(group: PermGroup):
    if group.kind == "symmetric":
        return "sym"
    if group.kind == "cyclic":
        return "cyc"
    return {"generators": [perm_to_json(g) for g in group.generators]}


def design_from_json(doc: dict) -> DesignSet:
    if not isinstance(doc, dict):
        raise DesignFileError("design file must be a JSON object")
    try:
        d = doc["d"]
        mode = doc["mode"]
        raw_points = doc["points"]
    except KeyError as e:
        raise DesignFileError(f"missing field {e.args[0]!r}") from None
    if not isinstance(d, int) or d < 2:
        raise DesignFileError("d must be an integer >= 2")
    if mode not in ("explicit", "orbit"):
        raise DesignFileError(f"mode must be explicit or orbit, got {mode!r}")
    if not isinstance(raw_points, list) or not raw_points:
        raise DesignFileError("points must be a non-empty list")
    points = []
    for row in raw_points:
        if not isinstance(row, list) or len(row) != d:
            raise DesignFileError(f"each point needs exactly {d} coordinates")
        try:
            points.append(PointVector.make([parse_scalar(c) for c in row]))
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise DesignFileError(f"bad point {row!r}: {e}") from None
    if mode == "explicit":
        if "group" in doc:
            raise DesignFileError("explicit designs take no group")
        return DesignSet.explicit(points)
    if "group" not in doc:
        raise DesignFileError("orbit designs need a group")
    return DesignSet.orbit(points, _group_from_json(doc["group"], d))


def design_to_json(design: DesignSet) -> dict:
    doc = {"d": design.d, "mode": design.mode}
    if design.group is None:
        doc["points"] = [p.to_json() for p in design.points]
    else:
        doc["points"] = [p.to_json() for p in design.base_points]
        doc["group"] = _group_to_json(design.group)
    return doc


def load_design(path: str) -> DesignSet:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DesignFileError(f"not valid JSON: {e}") from None
    return design_from_json(doc)


def save_design(design: DesignSet, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(design_to_json(design)))
        fh.write("\n")


class _FixedFloatEncoder(json.JSONEncoder):
    # byte-identical output needs a fixed float format; the stock encoder
    # uses shortest repr, so swap in 17 significant digits
    def iterencode(self, o, _one_shot=False):
        return json.encoder._make_iterencode(
            {} if self.check_circular else None, self.default,
            json.encoder.encode_basestring_ascii, self.indent,
            lambda x: format(x, ".17g"), self.key_separator,
            self.item_separator, self.sort_keys, self.skipkeys,
            _one_shot=False)(o, 0)


def dumps(doc) -> str:
    """JSON text with stable key order and fixed float formatting."""
    return json.dumps(doc, cls=_FixedFloatEncoder, indent=2, sort_keys=True)


__all__ = [
    "DesignFileError",
    "design_from_json",
    "design_to_json",
    "load_design",
    "save_design",
    "dumps",
    "scalar_to_json",
]
