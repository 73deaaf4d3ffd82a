"""Definition files: JSON documents of named structure-constant objects.

Grammar (informal)::

    file      := {"field": field, "objects": {name: object, ...}}
    field     := "rational" | {"prime": p}
    object    := {"kind": kind, ...kind-specific keys...}
    triples   := [[in_1, .., in_r, out_1, .., out_s, scalar], ...]
    scalar    := int | "a/b"            (written in lowest terms on output)

Every linear map is a list of sparse entries: input multi-index, output
multi-index, coefficient.  For example ``mul`` entries are ``[i, j, k, c]``
meaning ``b_i b_j`` has ``c`` as its ``b_k`` coefficient.  Kinds and keys:

=====================  ==========================================================
``hopf_algebra``       ``dim, basis, mul, unit, comul, counit, antipode``
``comodule``           ``hopf, dim, coaction``          (``x_i -> h_a (x) x_j``)
``bicomodule_algebra`` ``hopf, dim, left, right, mul, unit``
``module_object``      ``algebra, dim, left, right, action``
``hopf_bimodule``      ``algebra, dim, left, right, left_action, right_action``
``balancing``          ``module, comodule, matrix``     (``H (x) M (x) X -> H (x) X (x) M``)
=====================  ==========================================================

:func:`dumps` writes a canonical form (sorted keys, one entry per line) so
``dumps(loads(text)) == text`` for canonical ``text``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .bicomodules import Bicomodule, BicomoduleAlgebra, ModuleCategoryObject
from .coend import twisted_coend_algebra, twisted_coend_algebra_cached
from .comodules import Comodule, ConstructionError
from .hopf import AlgebraData, CoalgebraData, HopfAlgebraData
from .linalg import QQ, GF, LinearMap, Rationals, flat_index, multi_index
from .trace import HopfBimodule

KINDS = ("hopf_algebra", "comodule", "bicomodule_algebra", "module_object", "hopf_bimodule", "balancing")
_ORDER = {k: i for i, k in enumerate(KINDS)}


class DefinitionError(ValueError):
    """A definition file failed to parse; carries a 1-based line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Balancing:
    module: ModuleCategoryObject
    comodule: Comodule
    matrix: LinearMap
    module_name: str = ""
    comodule_name: str = ""

    @property
    def hopf(self):
        return self.module.hopf


@dataclass
class DefinitionFile:
    field: Any
    objects: dict[str, Any] = field(default_factory=dict)

    def of_kind(self, kind: str) -> dict[str, Any]:
        return {k: v for k, v in self.objects.items() if kind_of(v) == kind}

    def get(self, name: str):
        try:
            return self.objects[name]
        except KeyError:
            raise KeyError(f"no object named {name!r}") from None


def kind_of(obj) -> str:
    if isinstance(obj, HopfAlgebraData):
        return "hopf_algebra"
    if isinstance(obj, Comodule):
        return "comodule"
    if isinstance(obj, BicomoduleAlgebra):
        return "bicomodule_algebra"
    if isinstance(obj, ModuleCategoryObject):
        return "module_object"
    if isinstance(obj, HopfBimodule):
        return "hopf_bimodule"
    if isinstance(obj, Balancing):
        return "balancing"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# --------------------------------------------------------------------------
# scalars and sparse maps


def format_scalar(fld, v):
    if isinstance(fld, Rationals):
        v = Fraction(v)
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return int(v)


def parse_scalar(fld, raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise DefinitionError(f"{where}: scalar must be an integer or an \"a/b\" string, got {raw!r}")
    if isinstance(raw, str):
        if not re.fullmatch(r"\s*-?\d+\s*(/\s*\d+\s*)?", raw):
            raise DefinitionError(f"{where}: malformed scalar {raw!r}")
        try:
            return fld(raw)
        except (ValueError, ZeroDivisionError):
            raise DefinitionError(f"{where}: {raw!r} is not a scalar of {fld!r}") from None
    return fld(raw)


def to_triples(m: LinearMap, in_dims: tuple[int, ...], out_dims: tuple[int, ...]) -> list[list]:
    out = []
    for r, c, v in m.nonzero():
        out.append([*multi_index(c, in_dims), *multi_index(r, out_dims), format_scalar(m.field, v)])
    out.sort(key=lambda e: e[:-1])
    return out


def from_triples(fld, entries, in_dims: tuple[int, ...], out_dims: tuple[int, ...], where: str) -> LinearMap:
    if not isinstance(entries, list):
        raise DefinitionError(f"{where}: expected a list of entries")
    rows = 1
    for d in out_dims:
        rows *= d
    cols = 1
    for d in in_dims:
        cols *= d
    data: dict[tuple[int, int], Any] = {}
    width = len(in_dims) + len(out_dims) + 1
    for n, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != width:
            raise DefinitionError(f"{where}[{n}]: expected {width} items, got {e!r}")
        idx = e[:-1]
        for i, (k, d) in enumerate(zip(idx, in_dims + out_dims)):
            if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k < d:
                raise DefinitionError(f"{where}[{n}]: index {k!r} at position {i} outside 0..{d - 1}")
        c = flat_index(idx[:len(in_dims)], in_dims)
        r = flat_index(idx[len(in_dims):], out_dims)
        if (r, c) in data:
            raise DefinitionError(f"{where}[{n}]: duplicate entry {idx}")
        data[(r, c)] = parse_scalar(fld, e[-1], f"{where}[{n}]")
    return LinearMap.from_entries(fld, rows, cols, data)


# --------------------------------------------------------------------------
# serialization


def _coaction_fields(b: Bicomodule) -> dict:
    n, d = b.hopf.dim, b.dim
    return {"left": to_triples(b.left, (d,), (n, d)), "right": to_triples(b.right, (d,), (d, n))}


def _name_of(doc: DefinitionFile, obj, kind: str) -> str:
    for k, v in doc.objects.items():
        if v is obj:
            return k
    for k, v in doc.objects.items():  # structurally equal stand-in
        if kind_of(v) == kind_of(obj) and _encode(doc, k, v) == _encode(doc, k, obj):
            return k
    raise ValueError(f"{kind} {getattr(obj, 'name', obj)!r} is referenced but not part of the file")


def _encode(doc: DefinitionFile, name: str, obj) -> dict:
    kind = kind_of(obj)
    if kind == "hopf_algebra":
        n = obj.dim
        return {"kind": kind, "dim": n, "basis": list(obj.basis),
                "mul": to_triples(obj.mul, (n, n), (n,)),
                "unit": to_triples(obj.unit, (1,), (n,)),
                "comul": to_triples(obj.comul, (n,), (n, n)),
                "counit": to_triples(obj.counit, (n,), (1,)),
                "antipode": to_triples(obj.antipode, (n,), (n,))}
    if kind == "comodule":
        return {"kind": kind, "hopf": _name_of(doc, obj.hopf, "hopf algebra"), "dim": obj.dim,
                "coaction": to_triples(obj.coaction, (obj.dim,), (obj.hopf.dim, obj.dim))}
    if kind == "bicomodule_algebra":
        d = obj.dim
        return {"kind": kind, "hopf": _name_of(doc, obj.hopf, "hopf algebra"), "dim": d,
                **_coaction_fields(obj.carrier),
                "mul": to_triples(obj.mul, (d, d), (d,)), "unit": to_triples(obj.unit, (1,), (d,))}
    if kind == "module_object":
        d, b = obj.dim, obj.algebra.dim
        return {"kind": kind, "algebra": _name_of(doc, obj.algebra, "bicomodule algebra"), "dim": d,
                **_coaction_fields(obj.carrier), "action": to_triples(obj.action, (d, b), (d,))}
    if kind == "hopf_bimodule":
        d, b, n = obj.dim, obj.algebra.dim, obj.coend.dim
        return {"kind": kind, "algebra": _name_of(doc, obj.algebra, "bicomodule algebra"), "dim": d,
                **_coaction_fields(obj.carrier),
                "left_action": to_triples(obj.left_action, (n, d), (d,)),
                "right_action": to_triples(obj.right_action, (d, b), (d,))}
    n, d, e = obj.module.hopf.dim, obj.module.dim, obj.comodule.dim
    return {"kind": kind, "module": _name_of(doc, obj.module, "module object"),
            "comodule": _name_of(doc, obj.comodule, "comodule"),
            "matrix": to_triples(obj.matrix, (n, d, e), (n, e, d))}


def _emit(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_emit(value[k], indent + 1)}' for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in value):
            return "[" + ", ".join(json.dumps(v) for v in value) + "]"
        items = [f"{pad}  {_emit(v, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value)


def dumps(doc: DefinitionFile) -> str:
    fld = "rational" if isinstance(doc.field, Rationals) else {"prime": doc.field.p}
    objs = {name: _encode(doc, name, obj) for name, obj in doc.objects.items()}
    return _emit({"field": fld, "objects": objs}) + "\n"


# --------------------------------------------------------------------------
# parsing


def _locate(text: str, name: str) -> tuple[int | None, int | None]:
    m = re.search(r'"' + re.escape(name) + r'"\s*:', text)
    if not m:
        return None, None
    line = text.count("\n", 0, m.start()) + 1
    col = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
    return line, col


def _field(raw):
    if raw == "rational":
        return QQ
    if isinstance(raw, dict) and set(raw) == {"prime"} and isinstance(raw["prime"], int):
        try:
            return GF(raw["prime"])
        except ValueError as exc:
            raise DefinitionError(str(exc)) from None
    raise DefinitionError(f'field must be "rational" or {{"prime": p}}, got {raw!r}')


_REQUIRED = {
    "hopf_algebra": ("dim", "mul", "unit", "comul", "counit", "antipode"),
    "comodule": ("hopf", "dim", "coaction"),
    "bicomodule_algebra": ("hopf", "dim", "left", "right", "mul", "unit"),
    "module_object": ("algebra", "dim", "left", "right", "action"),
    "hopf_bimodule": ("algebra", "dim", "left", "right", "left_action", "right_action"),
    "balancing": ("module", "comodule", "matrix"),
}


def _dim(spec, where):
    d = spec["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise DefinitionError(f"{where}.dim must be a positive integer")
    return d


def _decode(doc: DefinitionFile, name: str, spec: dict):
    fld = doc.field
    kind = spec["kind"]
    w = name

    def ref(key, want):
        target = spec[key]
        obj = doc.objects.get(target) if isinstance(target, str) else None
        if obj is None or kind_of(obj) != want:
            raise DefinitionError(f"{w}.{key}: {target!r} does not name a {want}")
        return obj

    if kind == "hopf_algebra":
        n = _dim(spec, w)
        basis = spec.get("basis", [])
        if basis and (not isinstance(basis, list) or len(basis) != n or not all(isinstance(b, str) for b in basis)):
            raise DefinitionError(f"{w}.basis must list {n} labels")
        return HopfAlgebraData(
            AlgebraData(n, from_triples(fld, spec["mul"], (n, n), (n,), f"{w}.mul"),
                        from_triples(fld, spec["unit"], (1,), (n,), f"{w}.unit")),
            CoalgebraData(n, from_triples(fld, spec["comul"], (n,), (n, n), f"{w}.comul"),
                          from_triples(fld, spec["counit"], (n,), (1,), f"{w}.counit")),
            from_triples(fld, spec["antipode"], (n,), (n,), f"{w}.antipode"), name, tuple(basis))
    if kind == "comodule":
        h = ref("hopf", "hopf_algebra")
        d = _dim(spec, w)
        return Comodule(h, d, from_triples(fld, spec["coaction"], (d,), (h.dim, d), f"{w}.coaction"), name)

    def carrier(h, d):
        return Bicomodule(h, d, from_triples(fld, spec["left"], (d,), (h.dim, d), f"{w}.left"),
                          from_triples(fld, spec["right"], (d,), (d, h.dim), f"{w}.right"), name)

    if kind == "bicomodule_algebra":
        h = ref("hopf", "hopf_algebra")
        d = _dim(spec, w)
        return BicomoduleAlgebra(carrier(h, d), from_triples(fld, spec["mul"], (d, d), (d,), f"{w}.mul"),
                                 from_triples(fld, spec["unit"], (1,), (d,), f"{w}.unit"))
    if kind == "module_object":
        b = ref("algebra", "bicomodule_algebra")
        d = _dim(spec, w)
        return ModuleCategoryObject(carrier(b.hopf, d), b,
                                    from_triples(fld, spec["action"], (d, b.dim), (d,), f"{w}.action"))
    if kind == "hopf_bimodule":
        b = ref("algebra", "bicomodule_algebra")
        h = b.hopf
        d = _dim(spec, w)
        try:
            ht = twisted_coend_algebra_cached(h)
        except ConstructionError:  # corrupt h; let verification report it
            ht = twisted_coend_algebra(h, check=False)
        return HopfBimodule(carrier(h, d), ht, b,
                            from_triples(fld, spec["left_action"], (h.dim, d), (d,), f"{w}.left_action"),
                            from_triples(fld, spec["right_action"], (d, b.dim), (d,), f"{w}.right_action"))
    m = ref("module", "module_object")
    x = ref("comodule", "comodule")
    n, d, e = m.hopf.dim, m.dim, x.dim
    return Balancing(m, x, from_triples(fld, spec["matrix"], (n, d, e), (n, e, d), f"{w}.matrix"),
                     spec["module"], spec["comodule"])


def loads(text: str) -> DefinitionFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict) or set(raw) - {"field", "objects"} or "field" not in raw:
        raise DefinitionError('top level must be an object with keys "field" and "objects"', 1, 1)
    try:
        doc = DefinitionFile(_field(raw["field"]))
    except DefinitionError as exc:
        line, col = _locate(text, "field")
        raise DefinitionError(str(exc), line, col) from None
    objects = raw.get("objects", {})
    if not isinstance(objects, dict):
        raise DefinitionError('"objects" must be a JSON object', *_locate(text, "objects"))
    for name, spec in objects.items():
        if not isinstance(spec, dict) or spec.get("kind") not in KINDS:
            raise DefinitionError(f"{name}: kind must be one of {', '.join(KINDS)}", *_locate(text, name))
        missing = [k for k in _REQUIRED[spec["kind"]] if k not in spec]
        if missing:
            raise DefinitionError(f"{name}: missing keys {missing}", *_locate(text, name))
    pending = sorted(objects, key=lambda k: (_ORDER[objects[k]["kind"]], k))
    for name in pending:
        try:
            doc.objects[name] = _decode(doc, name, objects[name])
        except DefinitionError as exc:
            line, col = _locate(text, name)
            raise DefinitionError(str(exc), line, col) from None
        except ValueError as exc:  # shape and compatibility errors from constructors
            line, col = _locate(text, name)
            raise DefinitionError(f"{name}: {exc}", line, col) from None
    return doc


def load(path) -> DefinitionFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(doc: DefinitionFile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# --------------------------------------------------------------------------
# export of built-in algebras


def export_family(h: HopfAlgebraData, modules: bool = True, balancings: bool = False) -> DefinitionFile:
    """The standard test family of ``h`` as a definition file.

    Keys are prefixed by kind (``comod``, ``alg``, ``mod``, ``bimod``) since
    the built-in names repeat across kinds.
    """
    from .trace import balancing
    from .zoo import standard_test_family, sample_hopf_bimodules, sample_module_objects

    fam = standard_test_family(h)
    doc = DefinitionFile(h.field)
    doc.objects["H"] = h
    for x in fam.comodules:
        doc.objects[f"comod {x.name}"] = x
    for b in fam.algebras:
        doc.objects[f"alg {b.name}"] = b
    if not modules:
        return doc
    for b in fam.algebras:
        for m in sample_module_objects(b, fam):
            doc.objects[f"mod {b.name}:{m.name}"] = m
        for n in sample_hopf_bimodules(b, fam):
            doc.objects[f"bimod {b.name}:{n.name}"] = n
    if balancings:
        m = doc.objects["mod k:k"]
        for x in fam.comodules:
            if x.dim <= 4:
                w = balancing(m, x)
                doc.objects[f"beta k:{x.name}"] = Balancing(m, x, w.beta, "mod k:k", f"comod {x.name}")
    return doc
