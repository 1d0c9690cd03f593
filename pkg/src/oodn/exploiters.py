"""Set-theoretic operations over objects and classes.

All five operations are pure: operands are never mutated.  Results that
"do not exist" (empty intersection, self-difference, ...) are modeled as
a first-class absent value, never as an error.  Members are matched by
their unique name key and then checked with the equivalence judgments.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

from .errors import OodnError
from .model import (
    ClassDef,
    Core,
    Method,
    ObjectInstance,
    Projection,
    Property,
    QuantitativeProperty,
    Signature,
    Specification,
    method_equivalent,
    property_equivalent,
    require_homogeneous,
)


class OperationError(OodnError):
    """Misuse of an exploiter (bad arity, non-core-only operand, ...)."""


@dataclass(frozen=True)
class OperationResult:
    """Outcome of a class operation: a class (plus, for object union, the
    resulting object set), or an absence reason."""

    class_def: ClassDef | None = None
    objects: tuple | None = None
    reason: str | None = None

    def __post_init__(self):
        if (self.class_def is None) == (self.reason is None):
            raise OperationError("result must carry either a class or a reason")

    @property
    def exists(self) -> bool:
        return self.class_def is not None

    @classmethod
    def present(cls, class_def: ClassDef, objects=None) -> "OperationResult":
        return cls(class_def=class_def, objects=tuple(objects) if objects else None)

    @classmethod
    def absent(cls, reason: str) -> "OperationResult":
        return cls(reason=reason)


def _members_of(t: ClassDef) -> tuple[dict, dict]:
    core = require_homogeneous(t, "exploiter operand")
    props = {p.name: p for p in core.specification}
    methods = {m.name: m for m in core.signature}
    return props, methods


def _derived_name(op: str, names: Sequence[str]) -> str:
    return f"{op}({','.join(names)})"


def _projection_of(
    t: ClassDef, label: str, matched_props: set, matched_methods: set
) -> Projection | None:
    core = t.core
    assert core is not None
    props = tuple(p for p in core.specification if p.name not in matched_props)
    methods = tuple(m for m in core.signature if m.name not in matched_methods)
    if not props and not methods:
        return None
    return Projection(label, Specification(props), Signature(methods))


def class_union(
    operands: Sequence[ClassDef],
    labels: Sequence[str] | None = None,
    name: str | None = None,
) -> OperationResult:
    """Union of two or more core-only classes: shared members form the
    core, each operand's unmatched members form a projection (empty
    projections omitted, operand order preserved)."""
    if len(operands) < 2:
        raise OperationError("union needs at least two operands")
    if labels is None:
        labels = [t.name for t in operands]
    elif len(labels) != len(operands):
        raise OperationError("one label per operand required")
    all_members = [_members_of(t) for t in operands]

    core_props: list[Property] = []
    for p in operands[0].core.specification:
        if all(
            ps.get(p.name) is not None and property_equivalent(p, ps[p.name])
            for ps, _ in all_members[1:]
        ):
            core_props.append(p)
    core_methods: list[Method] = []
    for m in operands[0].core.signature:
        if all(
            ms.get(m.name) is not None and method_equivalent(m, ms[m.name])
            for _, ms in all_members[1:]
        ):
            core_methods.append(m)

    shared_prop_names = {p.name for p in core_props}
    shared_method_names = {m.name for m in core_methods}
    projections = []
    for t, label in zip(operands, labels):
        pr = _projection_of(t, label, shared_prop_names, shared_method_names)
        if pr is not None:
            projections.append(pr)

    result = ClassDef(
        name=name or _derived_name("union", [t.name for t in operands]),
        core=Core(Specification(tuple(core_props)), Signature(tuple(core_methods))),
        projections=tuple(projections),
    )
    return OperationResult.present(result)


def class_intersection(
    a: ClassDef, b: ClassDef, name: str | None = None
) -> OperationResult:
    """Core of all pairwise-equivalent members; absent when no member of
    `a` has an equivalent in `b`."""
    b_props, b_methods = _members_of(b)
    _members_of(a)
    props = tuple(
        p
        for p in a.core.specification
        if p.name in b_props and property_equivalent(p, b_props[p.name])
    )
    methods = tuple(
        m
        for m in a.core.signature
        if m.name in b_methods and method_equivalent(m, b_methods[m.name])
    )
    if not props and not methods:
        return OperationResult.absent(
            f"classes {a.name!r} and {b.name!r} share no equivalent members"
        )
    result = ClassDef(
        name=name or _derived_name("intersection", [a.name, b.name]),
        core=Core(Specification(props), Signature(methods)),
    )
    return OperationResult.present(result)


def class_difference(a: ClassDef, b: ClassDef, name: str | None = None) -> OperationResult:
    """Members of `a` with no equivalent in `b`, as a single projection;
    absent when every member of `a` is matched."""
    b_props, b_methods = _members_of(b)
    _members_of(a)
    matched_props = {
        p.name
        for p in a.core.specification
        if p.name in b_props and property_equivalent(p, b_props[p.name])
    }
    matched_methods = {
        m.name
        for m in a.core.signature
        if m.name in b_methods and method_equivalent(m, b_methods[m.name])
    }
    pr = _projection_of(a, a.name, matched_props, matched_methods)
    if pr is None:
        return OperationResult.absent(
            f"every member of {a.name!r} has an equivalent in {b.name!r}"
        )
    result = ClassDef(
        name=name or _derived_name("difference", [a.name, b.name]),
        core=None,
        projections=(pr,),
    )
    return OperationResult.present(result)


def class_symmetric_difference(
    a: ClassDef, b: ClassDef, name: str | None = None
) -> OperationResult:
    """Unmatched members of `a` then of `b`, one projection per side
    (empty sides omitted); absent when the classes are member-for-member
    equivalent."""
    left = class_difference(a, b)
    right = class_difference(b, a)
    projections = []
    if left.exists:
        projections.extend(left.class_def.projections)
    if right.exists:
        projections.extend(right.class_def.projections)
    if not projections:
        return OperationResult.absent(
            f"classes {a.name!r} and {b.name!r} are member-for-member equivalent"
        )
    result = ClassDef(
        name=name or _derived_name("symmetric-difference", [a.name, b.name]),
        core=None,
        projections=tuple(projections),
    )
    return OperationResult.present(result)


def clone_object(o: ObjectInstance, index: int) -> ObjectInstance:
    """Indexed copy of `o`; similar to the original but a distinct node.
    Index uniqueness within a network is enforced at the network layer."""
    if index < 1:
        raise OperationError("clone index must be a positive integer")
    return dataclasses.replace(o, clone_index=index)


def induced_class(o: ObjectInstance, name: str | None = None) -> ClassDef:
    """Class abstracted from an object: quantitative values dropped,
    verification expressions, degrees and method bodies kept."""
    props = []
    for p in o.specification:
        if isinstance(p, QuantitativeProperty):
            props.append(QuantitativeProperty(p.name, p.units))
        else:
            props.append(p)
    return ClassDef(
        name=name or f"T({o.identifier})",
        core=Core(Specification(tuple(props)), o.signature),
    )


def object_union(
    objects: Sequence[ObjectInstance], name: str | None = None
) -> tuple[tuple, OperationResult]:
    """Union applied to objects: the object set (repeated identifiers
    become indexed clones, multiset semantics) plus the union of the
    objects' induced classes."""
    if len(objects) < 2:
        raise OperationError("object union needs at least two objects")
    used: dict[str, set[int]] = {}
    result_objects = []
    for o in objects:
        taken = used.setdefault(o.identifier, set())
        if o.clone_index not in taken:
            out = o
        else:
            index = 1
            while index in taken:
                index += 1
            out = clone_object(o, index)
        taken.add(out.clone_index)
        result_objects.append(out)
    classes = [induced_class(o) for o in objects]
    labels = [o.node_name for o in result_objects]
    union = class_union(
        classes,
        labels=labels,
        name=name or _derived_name("union", labels),
    )
    return tuple(result_objects), OperationResult.present(
        union.class_def, objects=result_objects
    )
