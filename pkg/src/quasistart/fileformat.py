"""Reading and writing instances and reports as JSON documents.

Instance documents (format version 1)::

    {
      "version": 1,
      "points": ["0", "1", "2"],
      "dist":   [["0", "0", "0"], ["1", "0", "1"], ["2", "2", "0"]],
      "flags":  {"t0": true},
      "F":      {"0": ["1", "2"], "1": ["0", "2"], "2": ["0", "1"]},
      "f":      {"0": "0", "1": "0", "2": "0"},
      "alpha":  [["1", "1", "1"], ...],
      "gamma":  {"kind": "linear", "params": {"c": "1/2"}},
      "psi":    {"kind": "table", "params": {"breakpoints": [["0", "0"], ["1", "1/2"]]}},
      "c":      "1/2",
      "x0":     "1",
      "trace":  {"points": ["1", "2"], "repeat_index": 0},
      "candidate": "0",
      "provenance": {"corpus": "example27"}
    }

Only ``points`` and ``dist`` are required.  Every rational is a string
``"p/q"`` or an integer string (bare JSON integers are also accepted on
input); floats are refused.  Rows of ``dist`` and ``alpha`` follow the order
of ``points``.  ``flags.t0`` asks the reader to enforce the T0 condition.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .functions import FunctionSpec
from .instance import LabInstance
from .multimaps import SetValuedMap, SingleMap
from .sequences import SequenceTrace
from .space import AxiomError, FiniteQuasiSpace, StructuralError, as_rational

__all__ = [
    "FORMAT_VERSION",
    "InputError",
    "rational_str",
    "parse_input",
    "load_instance",
    "instance_to_dict",
    "dump_instance",
    "dumps",
]

FORMAT_VERSION = 1

_KEYS = {"version", "points", "dist", "flags", "F", "f", "alpha", "gamma", "psi",
         "c", "x0", "trace", "candidate", "provenance"}


class InputError(ValueError):
    """A document that does not follow the grammar; ``where`` locates it."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def rational_str(q: Fraction) -> str:
    return str(q)


def _rational(value, where: str) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"float {value!r} not allowed; write rationals as \"p/q\"", where)
    try:
        return as_rational(value)
    except StructuralError as exc:
        raise InputError(str(exc), where) from None


def _matrix(doc, key: str, n: int):
    rows = doc[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"expected {n} rows", key)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"expected {n} entries", f"{key}[{i}]")
        out.append([_rational(v, f"{key}[{i}][{j}]") for j, v in enumerate(row)])
    return out


def _function(doc, key: str) -> FunctionSpec:
    try:
        return FunctionSpec.from_dict(doc[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad function spec: {exc}", key) from None


def load_instance(doc: dict) -> LabInstance:
    """Build a validated :class:`LabInstance` from a parsed document.

    Raises :class:`InputError` for grammar problems and
    :class:`~quasistart.space.AxiomError` when the matrix breaks an axiom.
    """
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    unknown = sorted(set(doc) - _KEYS)
    if unknown:
        raise InputError(f"unknown keys {unknown}")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise InputError(f"unsupported format version {version!r}", "version")
    for key in ("points", "dist"):
        if key not in doc:
            raise InputError("missing required key", key)
    points = doc["points"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise InputError("must be a list of strings", "points")
    if len(set(points)) != len(points):
        raise InputError("duplicate labels", "points")
    n = len(points)
    dist = _matrix(doc, "dist", n)
    t0 = bool(doc.get("flags", {}).get("t0", False))
    space = FiniteQuasiSpace(points, dist, require_t0=t0)

    F = f = gamma = psi = c = trace = None
    if "F" in doc:
        table = doc["F"]
        if not isinstance(table, dict):
            raise InputError("must map labels to lists", "F")
        for x, image in table.items():
            if not isinstance(image, list):
                raise InputError("image must be a list", f"F[{x}]")
            if not image:
                raise InputError("empty image", f"F[{x}]")
        try:
            F = SetValuedMap(table).validate(space)
        except StructuralError as exc:
            raise InputError(str(exc), "F") from None
    if "f" in doc or "alpha" in doc:
        if "f" not in doc:
            raise InputError("alpha given without f", "alpha")
        alpha = None
        if "alpha" in doc:
            a = _matrix(doc, "alpha", n)
            alpha = {(points[i], points[j]): a[i][j] for i in range(n) for j in range(n)}
        try:
            f = SingleMap(doc["f"], alpha).validate(space)
        except (StructuralError, AttributeError) as exc:
            raise InputError(str(exc), "f") from None
    if "gamma" in doc:
        gamma = _function(doc, "gamma")
    if "psi" in doc:
        psi = _function(doc, "psi")
    if "c" in doc:
        c = _rational(doc["c"], "c")
    if "trace" in doc:
        t = doc["trace"]
        try:
            trace = SequenceTrace(tuple(t["points"]), t.get("repeat_index"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(str(exc), "trace") from None
    try:
        return LabInstance(space, F, f, gamma, psi, c, doc.get("x0"), trace,
                           doc.get("candidate"), dict(doc.get("provenance", {})))
    except StructuralError as exc:
        raise InputError(str(exc)) from None


def parse_input(text: str) -> LabInstance:
    """Parse a JSON instance document; JSON syntax errors carry line:column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return load_instance(doc)


def instance_to_dict(inst: LabInstance) -> dict:
    pts = list(inst.space.labels)
    doc: dict = {
        "version": FORMAT_VERSION,
        "points": pts,
        "dist": [[rational_str(v) for v in row] for row in inst.space.dist],
    }
    if inst.space.is_t0():
        doc["flags"] = {"t0": True}
    if inst.F is not None:
        doc["F"] = {x: list(inst.space.points(inst.F[x])) for x in pts}
    if inst.f is not None:
        doc["f"] = {x: inst.f(x) for x in pts}
        if inst.f.alpha is not None:
            doc["alpha"] = [[rational_str(inst.f.a(x, y)) for y in pts] for x in pts]
    if inst.gamma is not None:
        doc["gamma"] = inst.gamma.to_dict()
    if inst.psi is not None:
        doc["psi"] = inst.psi.to_dict()
    if inst.c is not None:
        doc["c"] = rational_str(inst.c)
    if inst.x0 is not None:
        doc["x0"] = inst.x0
    if inst.trace is not None:
        doc["trace"] = {"points": list(inst.trace.points), "repeat_index": inst.trace.repeat_index}
    if inst.candidate is not None:
        doc["candidate"] = inst.candidate
    if inst.provenance:
        doc["provenance"] = dict(inst.provenance)
    return doc


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, two-space indent)."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def dump_instance(inst: LabInstance) -> str:
    return dumps(instance_to_dict(inst))
