"""Canonical JSON persistence (`.oodn.json`) and DOT graph export.

The document is a direct textual image of a network: named top-level
collections, expressions embedded as grammar text, degrees as numbers.
Serialization is deterministic (collections sorted), so equal networks
produce identical bytes.  Schema reference: docs/format.md.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import OodnError
from .expr import ExprError, parse, print_expr
from .model import (
    ClassDef,
    Core,
    Method,
    ModelError,
    ObjectInstance,
    Projection,
    QualitativeProperty,
    QuantitativeProperty,
    Signature,
    Specification,
)
from .modifiers import (
    AddMethod,
    AddProperty,
    Modifier,
    ModifierError,
    RemoveMethod,
    RemoveProperty,
    ReplaceMethod,
    ReplaceProperty,
    SetExpression,
    SetUnits,
    SetValue,
)
from .network import (
    EXPLOITER_NAMES,
    OBJECT,
    Network,
    NetworkError,
    NodeRef,
    Relation,
)

FORMAT = "oodn/1"


class LoadError(OodnError):
    """Schema violation; the message carries a path into the document."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _expect(value, type_, path: str, what: str):
    if not isinstance(value, type_) or isinstance(value, bool):
        raise LoadError(f"expected {what}", path)
    return value


def _get(obj: dict, key: str, type_, path: str, what: str, default=_expect):
    if key not in obj:
        if default is not _expect:
            return default
        raise LoadError(f"missing required key {key!r}", path)
    return _expect(obj[key], type_, f"{path}.{key}", what)


def _parse_expr(text: str, path: str):
    try:
        return parse(text)
    except ExprError as exc:
        raise LoadError(f"bad expression: {exc}", path) from exc


def _wrap(path: str, fn, *args):
    try:
        return fn(*args)
    except (ModelError, ModifierError, NetworkError) as exc:
        raise LoadError(str(exc), path) from exc


# --- loading -----------------------------------------------------------------


def _load_property(doc, path: str):
    _expect(doc, dict, path, "a property object")
    name = _get(doc, "name", str, path, "a string")
    kind = _get(doc, "kind", str, path, "a string")
    if kind == "quantitative":
        units = _get(doc, "units", str, path, "a string")
        value = doc.get("value")
        if value is not None and not isinstance(value, (int, float, list)):
            raise LoadError("expected a number, a list of numbers, or null", f"{path}.value")
        if isinstance(value, list):
            for i, v in enumerate(value):
                _expect(v, (int, float), f"{path}.value[{i}]", "a number")
        return _wrap(path, QuantitativeProperty, name, units, value)
    if kind == "qualitative":
        verification = doc.get("verification")
        if verification is not None:
            verification = _parse_expr(
                _expect(verification, str, f"{path}.verification", "a string"),
                f"{path}.verification",
            )
        degree = doc.get("degree")
        if degree is not None:
            _expect(degree, (int, float), f"{path}.degree", "a number")
        return _wrap(path, QualitativeProperty, name, verification, degree)
    raise LoadError(f"unknown property kind {kind!r}", f"{path}.kind")


def _load_method(doc, path: str):
    _expect(doc, dict, path, "a method object")
    name = _get(doc, "name", str, path, "a string")
    params = _get(doc, "parameters", list, path, "a list of strings", default=[])
    for i, p in enumerate(params):
        _expect(p, str, f"{path}.parameters[{i}]", "a string")
    body = doc.get("body")
    if body is not None:
        body = _parse_expr(
            _expect(body, str, f"{path}.body", "a string"), f"{path}.body"
        )
    return _wrap(path, Method, name, tuple(params), body)


def _load_members(doc, path: str):
    props = _get(doc, "properties", list, path, "a list", default=[])
    methods = _get(doc, "methods", list, path, "a list", default=[])
    spec = _wrap(
        f"{path}.properties",
        Specification,
        tuple(
            _load_property(p, f"{path}.properties[{i}]") for i, p in enumerate(props)
        ),
    )
    sig = _wrap(
        f"{path}.methods",
        Signature,
        tuple(_load_method(m, f"{path}.methods[{i}]") for i, m in enumerate(methods)),
    )
    return spec, sig


def _load_class(doc, path: str) -> ClassDef:
    _expect(doc, dict, path, "a class object")
    name = _get(doc, "name", str, path, "a string")
    core_doc = doc.get("core")
    core = None
    if core_doc is not None:
        spec, sig = _load_members(
            _expect(core_doc, dict, f"{path}.core", "an object"), f"{path}.core"
        )
        core = Core(spec, sig)
    projections = []
    for i, pr in enumerate(_get(doc, "projections", list, path, "a list", default=[])):
        pr_path = f"{path}.projections[{i}]"
        _expect(pr, dict, pr_path, "a projection object")
        label = _get(pr, "source", str, pr_path, "a string")
        spec, sig = _load_members(pr, pr_path)
        projections.append(_wrap(pr_path, Projection, label, spec, sig))
    return _wrap(path, ClassDef, name, core, tuple(projections))


def _load_object(doc, path: str) -> ObjectInstance:
    _expect(doc, dict, path, "an object")
    identifier = _get(doc, "identifier", str, path, "a string")
    clone_index = _get(doc, "cloneIndex", int, path, "an integer", default=0)
    spec, sig = _load_members(doc, path)
    return _wrap(path, ObjectInstance, identifier, spec, sig, clone_index)


_EDIT_LOADERS = {}


def _load_edit(doc, path: str):
    _expect(doc, dict, path, "an edit object")
    kind = _get(doc, "edit", str, path, "a string")
    if kind == "setValue":
        value = doc.get("value")
        if isinstance(value, list):
            value = tuple(value)
        elif not isinstance(value, (int, float)) or isinstance(value, bool):
            raise LoadError("expected a number or a list of numbers", f"{path}.value")
        return SetValue(_get(doc, "property", str, path, "a string"), value)
    if kind == "setUnits":
        return SetUnits(
            _get(doc, "property", str, path, "a string"),
            _get(doc, "units", str, path, "a string"),
        )
    if kind == "setExpression":
        return SetExpression(
            _get(doc, "property", str, path, "a string"),
            _parse_expr(
                _get(doc, "expression", str, path, "a string"), f"{path}.expression"
            ),
        )
    if kind == "addProperty":
        return AddProperty(_load_property(doc.get("propertyDef"), f"{path}.propertyDef"))
    if kind == "removeProperty":
        return RemoveProperty(_get(doc, "property", str, path, "a string"))
    if kind == "replaceProperty":
        return ReplaceProperty(
            _get(doc, "property", str, path, "a string"),
            _load_property(doc.get("propertyDef"), f"{path}.propertyDef"),
        )
    if kind == "addMethod":
        return AddMethod(_load_method(doc.get("methodDef"), f"{path}.methodDef"))
    if kind == "removeMethod":
        return RemoveMethod(_get(doc, "method", str, path, "a string"))
    if kind == "replaceMethod":
        return ReplaceMethod(
            _get(doc, "method", str, path, "a string"),
            _load_method(doc.get("methodDef"), f"{path}.methodDef"),
        )
    raise LoadError(f"unknown edit kind {kind!r}", f"{path}.edit")


def _load_modifier(doc, path: str) -> Modifier:
    _expect(doc, dict, path, "a modifier object")
    name = _get(doc, "name", str, path, "a string")
    target = _get(doc, "target", str, path, "a string")
    edits = _get(doc, "edits", list, path, "a list")
    loaded = tuple(_load_edit(e, f"{path}.edits[{i}]") for i, e in enumerate(edits))
    return _wrap(path, Modifier, name, target, loaded)


def _load_node_ref(doc, path: str) -> NodeRef:
    _expect(doc, dict, path, "a node reference")
    kind = _get(doc, "kind", str, path, "a string")
    name = _get(doc, "name", str, path, "a string")
    clone_index = _get(doc, "cloneIndex", int, path, "an integer", default=0)
    return _wrap(path, NodeRef, kind, name, clone_index)


def _load_relation(doc, path: str) -> Relation:
    _expect(doc, dict, path, "a relation object")
    return _wrap(
        path,
        Relation,
        _load_node_ref(doc.get("from"), f"{path}.from"),
        _load_node_ref(doc.get("to"), f"{path}.to"),
        _get(doc, "relation", str, path, "a string"),
        _get(doc, "provenance", str, path, "a string", default="declared"),
    )


def load_text(text: str) -> Network:
    """Parse a network document; every expression is parsed and every
    network invariant validated before the network is returned."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"not valid JSON: {exc}", "$") from exc
    _expect(doc, dict, "$", "a JSON object")
    fmt = _get(doc, "format", str, "$", "a string")
    if fmt != FORMAT:
        raise LoadError(f"unsupported format {fmt!r} (expected {FORMAT!r})", "$.format")

    classes = tuple(
        _load_class(c, f"$.classes[{i}]")
        for i, c in enumerate(_get(doc, "classes", list, "$", "a list", default=[]))
    )
    objects = tuple(
        _load_object(o, f"$.objects[{i}]")
        for i, o in enumerate(_get(doc, "objects", list, "$", "a list", default=[]))
    )
    modifiers = tuple(
        _load_modifier(m, f"$.modifiers[{i}]")
        for i, m in enumerate(_get(doc, "modifiers", list, "$", "a list", default=[]))
    )
    relations = tuple(
        _load_relation(r, f"$.relations[{i}]")
        for i, r in enumerate(_get(doc, "relations", list, "$", "a list", default=[]))
    )
    exploiters = _get(doc, "exploiters", list, "$", "a list", default=None)
    if exploiters is None:
        enabled = EXPLOITER_NAMES
    else:
        for i, e in enumerate(exploiters):
            _expect(e, str, f"$.exploiters[{i}]", "a string")
        enabled = frozenset(exploiters)
    return _wrap("$", Network, objects, classes, relations, enabled, modifiers)


def load_file(path) -> Network:
    return load_text(Path(path).read_text(encoding="utf-8"))


# --- saving ------------------------------------------------------------------


def _value_to_json(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def _property_to_json(p):
    if isinstance(p, QuantitativeProperty):
        return {
            "name": p.name,
            "kind": "quantitative",
            "units": p.units,
            "value": _value_to_json(p.value),
        }
    return {
        "name": p.name,
        "kind": "qualitative",
        "verification": print_expr(p.verification) if p.verification else None,
        "degree": p.degree,
    }


def _method_to_json(m: Method):
    return {
        "name": m.name,
        "parameters": list(m.parameters),
        "body": print_expr(m.body) if m.body else None,
    }


def _members_to_json(spec, sig):
    return {
        "properties": [_property_to_json(p) for p in spec],
        "methods": [_method_to_json(m) for m in sig],
    }


def _class_to_json(t: ClassDef):
    doc = {"name": t.name, "core": None, "projections": []}
    if t.core is not None:
        doc["core"] = _members_to_json(t.core.specification, t.core.signature)
    for pr in t.projections:
        entry = {"source": pr.source_label}
        entry.update(_members_to_json(pr.specification, pr.signature))
        doc["projections"].append(entry)
    return doc


def _object_to_json(o: ObjectInstance):
    doc = {"identifier": o.identifier, "cloneIndex": o.clone_index}
    doc.update(_members_to_json(o.specification, o.signature))
    return doc


def _edit_to_json(edit):
    if isinstance(edit, SetValue):
        return {"edit": "setValue", "property": edit.property_name, "value": _value_to_json(edit.value)}
    if isinstance(edit, SetUnits):
        return {"edit": "setUnits", "property": edit.property_name, "units": edit.units}
    if isinstance(edit, SetExpression):
        return {
            "edit": "setExpression",
            "property": edit.property_name,
            "expression": print_expr(edit.expression),
        }
    if isinstance(edit, AddProperty):
        return {"edit": "addProperty", "propertyDef": _property_to_json(edit.prop)}
    if isinstance(edit, RemoveProperty):
        return {"edit": "removeProperty", "property": edit.property_name}
    if isinstance(edit, ReplaceProperty):
        return {
            "edit": "replaceProperty",
            "property": edit.property_name,
            "propertyDef": _property_to_json(edit.replacement),
        }
    if isinstance(edit, AddMethod):
        return {"edit": "addMethod", "methodDef": _method_to_json(edit.method)}
    if isinstance(edit, RemoveMethod):
        return {"edit": "removeMethod", "method": edit.method_name}
    if isinstance(edit, ReplaceMethod):
        return {
            "edit": "replaceMethod",
            "method": edit.method_name,
            "methodDef": _method_to_json(edit.replacement),
        }
    raise TypeError(f"unknown edit {edit!r}")


def _modifier_to_json(m: Modifier):
    return {
        "name": m.name,
        "target": m.target_kind,
        "edits": [_edit_to_json(e) for e in m.edits],
    }


def _node_ref_to_json(ref: NodeRef):
    doc = {"kind": ref.kind, "name": ref.name}
    if ref.kind == OBJECT:
        doc["cloneIndex"] = ref.clone_index
    return doc


def _relation_to_json(r: Relation):
    return {
        "from": _node_ref_to_json(r.source),
        "to": _node_ref_to_json(r.target),
        "relation": r.kind,
        "provenance": r.provenance,
    }


def save_text(n: Network) -> str:
    """Deterministic serialization: collections sorted, stable key order;
    load_text(save_text(n)) reproduces n member-for-member."""
    doc = {
        "format": FORMAT,
        "classes": [
            _class_to_json(t) for t in sorted(n.classes, key=lambda t: t.name)
        ],
        "objects": [
            _object_to_json(o)
            for o in sorted(n.objects, key=lambda o: (o.identifier, o.clone_index))
        ],
        "modifiers": [
            _modifier_to_json(m) for m in sorted(n.modifiers, key=lambda m: m.name)
        ],
        "relations": [
            _relation_to_json(r) for r in sorted(n.relations, key=Relation.sort_key)
        ],
        "exploiters": sorted(n.exploiters),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_file(n: Network, path) -> None:
    Path(path).write_text(save_text(n), encoding="utf-8")


# --- DOT export --------------------------------------------------------------


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(n: Network) -> str:
    """DOT digraph: classes as boxes, objects as ellipses, edges labeled
    with their relation kind.  Recorded exploiter edges (operand-of /
    result-of) are dashed, mirroring operations whose results do not
    always exist."""
    lines = ["digraph oodn {"]
    for t in sorted(n.classes, key=lambda t: t.name):
        lines.append(f"  {_dot_quote(t.name)} [shape=box];")
    for o in sorted(n.objects, key=lambda o: (o.identifier, o.clone_index)):
        lines.append(f"  {_dot_quote(o.node_name)} [shape=ellipse];")
    for r in sorted(n.relations, key=Relation.sort_key):
        attrs = f"label={_dot_quote(r.kind)}"
        if r.provenance == "recorded" and r.kind in ("operand-of", "result-of"):
            attrs += " style=dashed"
        lines.append(
            f"  {_dot_quote(r.source.display)} -> {_dot_quote(r.target.display)} [{attrs}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
