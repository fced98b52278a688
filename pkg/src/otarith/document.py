"""JSON input documents and deterministic report serialization.

Integers travel as decimal strings (plain JSON integers are accepted too, floats
never); rationals as "a/b".  Unknown keys are rejected.
"""

import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ParseError, ShapeError

_INT = re.compile(r"^-?\d+$")
_RAT = re.compile(r"^(-?\d+)/(\d+)$")

DEFAULT_OPTIONS = {"precision_bits": 128, "enum_cap": 10**6, "horizon": 60}

_SCHEMA = {
    "field": {"min_poly", "integral_basis"},
    "units": {"totally_positive_fundamental", "provenance"},
    "subgroup": {"generators"},
    "modulus": {"finite_generators", "from_subgroup", "real_places"},
    "options": {"precision_bits", "enum_cap", "horizon"},
}


@dataclass
class InputDocument:
    min_poly: list
    integral_basis: list = None
    units: list = None
    provenance: str = None
    subgroup: list = None
    modulus: dict = None
    options: dict = dc_field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    name: str = None

    def to_json(self):
        out = {"field": {"min_poly": [str(c) for c in self.min_poly]}}
        if self.integral_basis is not None:
            out["field"]["integral_basis"] = [[_fmt(x) for x in row] for row in self.integral_basis]
        if self.units is not None:
            out["units"] = {"totally_positive_fundamental": [[_fmt(x) for x in v] for v in self.units],
                            "provenance": self.provenance or "input"}
        if self.subgroup is not None:
            out["subgroup"] = {"generators": [[_fmt(x) for x in v] for v in self.subgroup]}
        if self.modulus is not None:
            m = {}
            if self.modulus.get("from_subgroup"):
                m["from_subgroup"] = True
            if self.modulus.get("finite_generators") is not None:
                m["finite_generators"] = [[_fmt(x) for x in v] for v in self.modulus["finite_generators"]]
            rp = self.modulus.get("real_places", "all")
            m["real_places"] = rp if rp == "all" else [int(x) for x in rp]
            out["modulus"] = m
        out["options"] = {k: self.options[k] for k in ("precision_bits", "enum_cap", "horizon")}
        return out


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(v, path):
    if isinstance(v, bool):
        raise ParseError(f"{path}: expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and _INT.match(v.strip()):
        return int(v.strip())
    raise ParseError(f"{path}: expected an integer (decimal string), got {v!r}")


def _rat(v, path):
    if isinstance(v, str):
        m = _RAT.match(v.strip())
        if m:
            if int(m.group(2)) == 0:
                raise ParseError(f"{path}: zero denominator")
            return Fraction(int(m.group(1)), int(m.group(2)))
    return Fraction(_int(v, path))


def _list(v, path):
    if not isinstance(v, list):
        raise ParseError(f"{path}: expected a list")
    return v


def _check_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object")
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise ParseError(f"{path}: unknown key(s) {', '.join(extra)}")


def _vectors(v, n, path, rational=True):
    out = []
    for i, row in enumerate(_list(v, path)):
        row = _list(row, f"{path}[{i}]")
        if len(row) != n:
            raise ShapeError(f"{path}[{i}]: expected {n} coordinates, got {len(row)}")
        conv = _rat if rational else _int
        out.append([conv(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)])
    return out


def parse_input(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_object(data)


def parse_object(data):
    _check_keys(data, _SCHEMA, "$")
    if "field" not in data:
        raise ParseError("$: missing required key field")
    fld = data["field"]
    _check_keys(fld, _SCHEMA["field"], "$.field")
    if "min_poly" not in fld:
        raise ParseError("$.field: missing required key min_poly")
    f = [_int(c, f"$.field.min_poly[{i}]") for i, c in enumerate(_list(fld["min_poly"], "$.field.min_poly"))]
    while f and f[-1] == 0:
        f.pop()
    if len(f) < 3:
        raise ShapeError("$.field.min_poly: degree must be at least 2")
    n = len(f) - 1
    doc = InputDocument(f)
    if "integral_basis" in fld:
        B = _vectors(fld["integral_basis"], n, "$.field.integral_basis")
        if len(B) != n:
            raise ShapeError(f"$.field.integral_basis: expected {n} rows, got {len(B)}")
        doc.integral_basis = B
    if "units" in data:
        u = data["units"]
        _check_keys(u, _SCHEMA["units"], "$.units")
        doc.units = _vectors(u.get("totally_positive_fundamental", []), n,
                             "$.units.totally_positive_fundamental")
        prov = u.get("provenance", "input")
        if prov not in ("input", "searched+certified"):
            raise ParseError(f"$.units.provenance: unknown provenance {prov!r}")
        doc.provenance = prov
    if "subgroup" in data:
        sg = data["subgroup"]
        _check_keys(sg, _SCHEMA["subgroup"], "$.subgroup")
        doc.subgroup = _vectors(sg.get("generators", []), n, "$.subgroup.generators")
    if "modulus" in data:
        m = data["modulus"]
        _check_keys(m, _SCHEMA["modulus"], "$.modulus")
        mod = {"from_subgroup": bool(m.get("from_subgroup", False)), "finite_generators": None}
        if "finite_generators" in m:
            mod["finite_generators"] = _vectors(m["finite_generators"], n, "$.modulus.finite_generators")
        if mod["from_subgroup"] == (mod["finite_generators"] is not None):
            raise ParseError("$.modulus: give exactly one of finite_generators and from_subgroup")
        rp = m.get("real_places", "all")
        if rp != "all":
            rp = [_int(x, f"$.modulus.real_places[{i}]") for i, x in enumerate(_list(rp, "$.modulus.real_places"))]
        mod["real_places"] = rp
        doc.modulus = mod
    if "options" in data:
        o = data["options"]
        _check_keys(o, _SCHEMA["options"], "$.options")
        for k in o:
            doc.options[k] = _int(o[k], f"$.options.{k}")
    return doc


# -- serialization -----------------------------------------------------------------

def jsonable(x):
    """Convert report values (Fractions, tuples, intervals) to JSON-ready data."""
    from . import intervals

    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _fmt(x)
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "_mpi_"):
        return list(intervals.decimal_pair(x))
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj):
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=True) + "\n"
