"""Modifiers: ordered lists of primitive edits, effect-derived kind
classification, composition, and application to objects and classes.

Classification is target-relative: the same edit list can be full on a
small class and partial on a larger one.  Coverage counts pre-existing
members touched; pure additions touch nothing and classify as partial
with empty coverage.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import OodnError
from .expr import Expr
from .model import (
    ClassDef,
    Core,
    Method,
    ObjectInstance,
    Property,
    QualitativeProperty,
    QuantitativeProperty,
    Signature,
    Specification,
    require_homogeneous,
)


class ModifierError(OodnError):
    """Inapplicable edit or malformed modifier."""


# --- primitive edits ---------------------------------------------------------


@dataclass(frozen=True)
class SetValue:
    property_name: str
    value: float | tuple


@dataclass(frozen=True)
class SetUnits:
    property_name: str
    units: str


@dataclass(frozen=True)
class SetExpression:
    property_name: str
    expression: Expr


@dataclass(frozen=True)
class AddProperty:
    prop: Property


@dataclass(frozen=True)
class RemoveProperty:
    property_name: str


@dataclass(frozen=True)
class ReplaceProperty:
    property_name: str
    replacement: Property


@dataclass(frozen=True)
class AddMethod:
    method: Method


@dataclass(frozen=True)
class RemoveMethod:
    method_name: str


@dataclass(frozen=True)
class ReplaceMethod:
    method_name: str
    replacement: Method


ModificationFunction = Union[
    SetValue,
    SetUnits,
    SetExpression,
    AddProperty,
    RemoveProperty,
    ReplaceProperty,
    AddMethod,
    RemoveMethod,
    ReplaceMethod,
]

OBJECT = "object"
CLASS = "class"


@dataclass(frozen=True)
class Modifier:
    name: str
    target_kind: str  # "object" | "class"
    edits: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise ModifierError("modifier name must be nonempty")
        if self.target_kind not in (OBJECT, CLASS):
            raise ModifierError(
                f"modifier {self.name!r}: target kind must be 'object' or 'class'"
            )
        object.__setattr__(self, "edits", tuple(self.edits))
        if not self.edits:
            raise ModifierError(f"modifier {self.name!r}: edit list must be nonempty")


class ModifierKind(Enum):
    FULL = "full"
    PARTIAL = "partial"
    GENERATING = "generating"
    DESTROYING = "destroying"
    COMMUTABLE = "commutable"


# --- edit application --------------------------------------------------------


def _apply_edit(
    spec: list, sig: list, edit: ModificationFunction, who: str
) -> None:
    def prop_index(name: str) -> int:
        for i, p in enumerate(spec):
            if p.name == name:
                return i
        raise ModifierError(f"{who}: no property named {name!r}")

    def method_index(name: str) -> int:
        for i, m in enumerate(sig):
            if m.name == name:
                return i
        raise ModifierError(f"{who}: no method named {name!r}")

    if isinstance(edit, SetValue):
        i = prop_index(edit.property_name)
        if not isinstance(spec[i], QuantitativeProperty):
            raise ModifierError(
                f"{who}: property {edit.property_name!r} is not quantitative"
            )
        spec[i] = dataclasses.replace(spec[i], value=edit.value)
    elif isinstance(edit, SetUnits):
        i = prop_index(edit.property_name)
        if not isinstance(spec[i], QuantitativeProperty):
            raise ModifierError(
                f"{who}: property {edit.property_name!r} is not quantitative"
            )
        spec[i] = dataclasses.replace(spec[i], units=edit.units)
    elif isinstance(edit, SetExpression):
        # Targets a qualitative property's verification, or (when no such
        # property exists) a method's body.
        prop_i = next((i for i, p in enumerate(spec) if p.name == edit.property_name), None)
        if prop_i is not None:
            if not isinstance(spec[prop_i], QualitativeProperty):
                raise ModifierError(
                    f"{who}: property {edit.property_name!r} is not qualitative"
                )
            spec[prop_i] = dataclasses.replace(spec[prop_i], verification=edit.expression)
        else:
            i = method_index(edit.property_name)
            sig[i] = dataclasses.replace(sig[i], body=edit.expression)
    elif isinstance(edit, AddProperty):
        if any(p.name == edit.prop.name for p in spec):
            raise ModifierError(f"{who}: property {edit.prop.name!r} already exists")
        spec.append(edit.prop)
    elif isinstance(edit, RemoveProperty):
        del spec[prop_index(edit.property_name)]
    elif isinstance(edit, ReplaceProperty):
        i = prop_index(edit.property_name)
        if edit.replacement.name != edit.property_name and any(
            p.name == edit.replacement.name for p in spec
        ):
            raise ModifierError(
                f"{who}: property {edit.replacement.name!r} already exists"
            )
        spec[i] = edit.replacement
    elif isinstance(edit, AddMethod):
        if any(m.name == edit.method.name for m in sig):
            raise ModifierError(f"{who}: method {edit.method.name!r} already exists")
        sig.append(edit.method)
    elif isinstance(edit, RemoveMethod):
        del sig[method_index(edit.method_name)]
    elif isinstance(edit, ReplaceMethod):
        i = method_index(edit.method_name)
        if edit.replacement.name != edit.method_name and any(
            m.name == edit.replacement.name for m in sig
        ):
            raise ModifierError(f"{who}: method {edit.replacement.name!r} already exists")
        sig[i] = edit.replacement
    else:
        raise ModifierError(f"{who}: unknown edit {edit!r}")


def _apply_edits(
    spec: Specification, sig: Signature, m: Modifier
) -> tuple[Specification, Signature]:
    props = list(spec)
    methods = list(sig)
    who = f"modifier {m.name!r}"
    for edit in m.edits:
        _apply_edit(props, methods, edit, who)
    return Specification(tuple(props)), Signature(tuple(methods))


def apply_to_class(m: Modifier, t: ClassDef) -> ClassDef:
    """Apply a class modifier to a copy of `t`; `t` itself is unchanged."""
    if m.target_kind != CLASS:
        raise ModifierError(f"modifier {m.name!r} targets objects, not classes")
    core = require_homogeneous(t, f"modifier {m.name!r}")
    spec, sig = _apply_edits(core.specification, core.signature, m)
    return ClassDef(name=t.name, core=Core(spec, sig))


def apply_to_object(m: Modifier, o: ObjectInstance) -> ObjectInstance:
    """Apply an object modifier to a copy of `o`; the caller may remap the
    identifier afterwards."""
    if m.target_kind != OBJECT:
        raise ModifierError(f"modifier {m.name!r} targets classes, not objects")
    spec, sig = _apply_edits(o.specification, o.signature, m)
    return dataclasses.replace(o, specification=spec, signature=sig)


# --- classification ----------------------------------------------------------


def _target_members(target) -> tuple[Specification, Signature]:
    if isinstance(target, ClassDef):
        core = require_homogeneous(target, "classify")
        return core.specification, core.signature
    if isinstance(target, ObjectInstance):
        return target.specification, target.signature
    raise ModifierError(f"cannot classify against {target!r}")


def _touched(edit: ModificationFunction, original: set) -> tuple[str, str] | None:
    """Namespaced name of the pre-existing member an edit touches, if any."""
    if isinstance(edit, SetExpression):
        if ("p", edit.property_name) in original:
            return ("p", edit.property_name)
        return ("m", edit.property_name)
    if isinstance(edit, (SetValue, SetUnits, RemoveProperty, ReplaceProperty)):
        return ("p", edit.property_name)
    if isinstance(edit, (RemoveMethod, ReplaceMethod)):
        return ("m", edit.method_name)
    return None  # additions touch nothing pre-existing


def classify(m: Modifier, target) -> frozenset:
    """Effect-derived kind set against a concrete target.  Includes full
    or partial by coverage of pre-existing members, plus generating /
    destroying / commutable per the edit primitives used."""
    spec, sig = _target_members(target)
    # Applicability check: the edits must run cleanly in order.
    _apply_edits(spec, sig, m)

    original = {("p", p.name) for p in spec} | {("m", mm.name) for mm in sig}
    coverage = set()
    kinds = set()
    for edit in m.edits:
        touched = _touched(edit, original)
        if touched is not None and touched in original:
            coverage.add(touched)
        if isinstance(edit, (AddProperty, AddMethod)):
            kinds.add(ModifierKind.GENERATING)
        elif isinstance(edit, (RemoveProperty, RemoveMethod)):
            kinds.add(ModifierKind.DESTROYING)
        elif isinstance(edit, (ReplaceProperty, ReplaceMethod)):
            kinds.add(ModifierKind.COMMUTABLE)
    if original and coverage == original:
        kinds.add(ModifierKind.FULL)
    else:
        kinds.add(ModifierKind.PARTIAL)
    return frozenset(kinds)


def compose(first: Modifier, second: Modifier, name: str | None = None) -> Modifier:
    """Concatenate edit lists; application runs `first` then `second`."""
    if first.target_kind != second.target_kind:
        raise ModifierError(
            f"cannot compose {first.name!r} with {second.name!r}: "
            "mixed target kinds"
        )
    return Modifier(
        name=name or f"compose({first.name},{second.name})",
        target_kind=first.target_kind,
        edits=first.edits + second.edits,
    )
