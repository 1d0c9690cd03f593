"""Core domain types and the equivalence / similarity / satisfaction judgments.

Properties and methods are matched "by meaning", operationalized as exact
name-key equality.  Quantitative equivalence compares units only (values
abstract over instances); qualitative equivalence compares verification
expressions up to normal form; method equivalence compares name, arity
and body.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import OodnError
from .expr import (
    EvalContext,
    EvalError,
    Expr,
    Sort,
    evaluate,
    expr_equal,
    infer_sort,
    param_refs,
)


class ModelError(OodnError):
    """Invalid domain value or misuse of a judgment."""


NumberOrList = Union[float, tuple]


def _coerce_value(value) -> float | tuple | None:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        if not value:
            raise ModelError("a list value must be nonempty")
        return tuple(float(v) for v in value)
    return float(value)


@dataclass(frozen=True)
class QuantitativeProperty:
    """Named (value, units) pair; value may be a scalar, an ordered list,
    or absent at class level."""

    name: str
    units: str
    value: float | tuple | None = None

    def __post_init__(self):
        if not self.name:
            raise ModelError("property name must be nonempty")
        if not self.units:
            raise ModelError(f"property {self.name!r}: units must be nonempty")
        object.__setattr__(self, "value", _coerce_value(self.value))


@dataclass(frozen=True)
class QualitativeProperty:
    """Named verification predicate mapping the subject into [0, 1]; an
    instance may instead (or additionally) carry an evaluated degree."""

    name: str
    verification: Expr | None = None
    degree: float | None = None

    def __post_init__(self):
        if not self.name:
            raise ModelError("property name must be nonempty")
        if self.verification is None and self.degree is None:
            raise ModelError(
                f"property {self.name!r}: needs a verification expression or a degree"
            )
        if self.degree is not None:
            d = float(self.degree)
            if not 0.0 <= d <= 1.0:
                raise ModelError(f"property {self.name!r}: degree {d} outside [0, 1]")
            object.__setattr__(self, "degree", d)
        if self.verification is not None:
            if infer_sort(self.verification) is not Sort.DEGREE:
                raise ModelError(
                    f"property {self.name!r}: verification must evaluate to a degree"
                )


Property = Union[QuantitativeProperty, QualitativeProperty]


@dataclass(frozen=True)
class Specification:
    """Ordered property list with pairwise-distinct names."""

    members: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        seen = set()
        for p in self.members:
            if not isinstance(p, (QuantitativeProperty, QualitativeProperty)):
                raise ModelError(f"not a property: {p!r}")
            if p.name in seen:
                raise ModelError(f"duplicate property name {p.name!r}")
            seen.add(p.name)

    def __iter__(self) -> Iterator[Property]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def names(self) -> tuple:
        return tuple(p.name for p in self.members)

    def get(self, name: str) -> Property | None:
        for p in self.members:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class Method:
    """Named operation; the body may be left abstract at class level."""

    name: str
    parameters: tuple = ()
    body: Expr | None = None

    def __post_init__(self):
        if not self.name:
            raise ModelError("method name must be nonempty")
        object.__setattr__(self, "parameters", tuple(self.parameters))
        if len(set(self.parameters)) != len(self.parameters):
            raise ModelError(f"method {self.name!r}: duplicate parameter names")
        if self.body is not None:
            unknown = param_refs(self.body) - set(self.parameters)
            if unknown:
                raise ModelError(
                    f"method {self.name!r}: body references undeclared parameters "
                    f"{sorted(unknown)}"
                )

    @property
    def arity(self) -> int:
        return len(self.parameters)


@dataclass(frozen=True)
class Signature:
    """Ordered method list with pairwise-distinct names."""

    methods: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        seen = set()
        for m in self.methods:
            if not isinstance(m, Method):
                raise ModelError(f"not a method: {m!r}")
            if m.name in seen:
                raise ModelError(f"duplicate method name {m.name!r}")
            seen.add(m.name)

    def __iter__(self) -> Iterator[Method]:
        return iter(self.methods)

    def __len__(self) -> int:
        return len(self.methods)

    @property
    def names(self) -> tuple:
        return tuple(m.name for m in self.methods)

    def get(self, name: str) -> Method | None:
        for m in self.methods:
            if m.name == name:
                return m
        return None


@dataclass(frozen=True)
class ObjectInstance:
    """Concrete object: identifier, clone index (0 = original),
    specification with concrete quantitative values, and signature."""

    identifier: str
    specification: Specification = field(default_factory=Specification)
    signature: Signature = field(default_factory=Signature)
    clone_index: int = 0

    def __post_init__(self):
        if not self.identifier:
            raise ModelError("object identifier must be nonempty")
        if self.clone_index < 0:
            raise ModelError("clone index must be nonnegative")
        for p in self.specification:
            if isinstance(p, QuantitativeProperty) and p.value is None:
                raise ModelError(
                    f"object {self.identifier!r}: property {p.name!r} "
                    "must carry a concrete value"
                )

    def find_property(self, name: str) -> Property | None:
        return self.specification.get(name)

    @property
    def node_name(self) -> str:
        if self.clone_index:
            return f"{self.identifier}#{self.clone_index}"
        return self.identifier


@dataclass(frozen=True)
class Core:
    """Members shared by all constituents of a class."""

    specification: Specification = field(default_factory=Specification)
    signature: Signature = field(default_factory=Signature)

    def __len__(self) -> int:
        return len(self.specification) + len(self.signature)


@dataclass(frozen=True)
class Projection:
    """Members typical of exactly one constituent; labeled by its source."""

    source_label: str
    specification: Specification = field(default_factory=Specification)
    signature: Signature = field(default_factory=Signature)

    def __post_init__(self):
        if not self.source_label:
            raise ModelError("projection source label must be nonempty")
        if len(self.specification) + len(self.signature) == 0:
            raise ModelError(
                f"projection {self.source_label!r} must hold at least one member"
            )


@dataclass(frozen=True)
class ClassDef:
    """Class of objects.  Core-only classes are homogeneous; classes with
    projections (with or without a core) are inhomogeneous."""

    name: str
    core: Core | None = None
    projections: tuple = ()

    def __post_init__(self):
        if not self.name:
            raise ModelError("class name must be nonempty")
        object.__setattr__(self, "projections", tuple(self.projections))
        if self.core is None and not self.projections:
            raise ModelError(f"class {self.name!r}: core and projections both empty")
        if self.core is not None and len(self.core) == 0 and not self.projections:
            raise ModelError(f"class {self.name!r}: empty core without projections")
        core_props = set(self.core.specification.names) if self.core else set()
        core_methods = set(self.core.signature.names) if self.core else set()
        for pr in self.projections:
            clash = core_props & set(pr.specification.names)
            if clash:
                raise ModelError(
                    f"class {self.name!r}: properties {sorted(clash)} appear in both "
                    f"core and projection {pr.source_label!r}"
                )
            clash = core_methods & set(pr.signature.names)
            if clash:
                raise ModelError(
                    f"class {self.name!r}: methods {sorted(clash)} appear in both "
                    f"core and projection {pr.source_label!r}"
                )

    @property
    def is_homogeneous(self) -> bool:
        return self.core is not None and not self.projections


def require_homogeneous(t: ClassDef, context: str) -> Core:
    if not t.is_homogeneous:
        raise ModelError(f"{context}: class {t.name!r} is not core-only")
    assert t.core is not None
    return t.core


# --- equivalence judgments ---------------------------------------------------


def property_equivalent(a: Property, b: Property) -> bool:
    """Name + units for quantitative pairs (values abstract over instances);
    name + verification normal form for qualitative pairs; mixed kinds
    are never equivalent."""
    if isinstance(a, QuantitativeProperty) and isinstance(b, QuantitativeProperty):
        return a.name == b.name and a.units == b.units
    if isinstance(a, QualitativeProperty) and isinstance(b, QualitativeProperty):
        if a.name != b.name:
            return False
        if a.verification is None and b.verification is None:
            return True
        if a.verification is None or b.verification is None:
            return False
        return expr_equal(a.verification, b.verification)
    return False


def method_equivalent(a: Method, b: Method) -> bool:
    if a.name != b.name or a.arity != b.arity:
        return False
    if a.body is None and b.body is None:
        return True
    if a.body is None or b.body is None:
        return False
    return expr_equal(a.body, b.body)


Member = Union[QuantitativeProperty, QualitativeProperty, Method]


def member_equivalent(a: Member, b: Member) -> bool:
    if isinstance(a, Method) and isinstance(b, Method):
        return method_equivalent(a, b)
    if isinstance(a, Method) or isinstance(b, Method):
        return False
    return property_equivalent(a, b)


def _specs_equivalent(a: Specification, b: Specification) -> bool:
    if set(a.names) != set(b.names):
        return False
    return all(property_equivalent(p, b.get(p.name)) for p in a)


def _sigs_equivalent(a: Signature, b: Signature) -> bool:
    if set(a.names) != set(b.names):
        return False
    return all(method_equivalent(m, b.get(m.name)) for m in a)


def objects_similar(a: ObjectInstance, b: ObjectInstance) -> bool:
    """Same properties and same behavior, order-insensitive by name."""
    return _specs_equivalent(a.specification, b.specification) and _sigs_equivalent(
        a.signature, b.signature
    )


# --- satisfaction and subsumption -------------------------------------------


def satisfies(o: ObjectInstance, t: ClassDef, threshold: float = 1.0) -> float:
    """Degree to which object `o` meets class `t`'s requirements: the
    minimum over per-member scores.  Callers compare the result against
    `threshold` for a crisp instance-of decision."""
    core = require_homogeneous(t, "satisfies")
    if not 0.0 < threshold <= 1.0:
        raise ModelError(f"threshold must lie in (0, 1], got {threshold}")
    score = 1.0
    for p in core.specification:
        score = min(score, _property_score(o, p))
        if score == 0.0:
            return 0.0
    for m in core.signature:
        score = min(score, _method_score(o, m))
        if score == 0.0:
            return 0.0
    return score


def _property_score(o: ObjectInstance, p: Property) -> float:
    own = o.find_property(p.name)
    if isinstance(p, QuantitativeProperty):
        if isinstance(own, QuantitativeProperty) and own.units == p.units:
            return 1.0
        return 0.0
    if p.verification is not None:
        try:
            result = evaluate(p.verification, EvalContext(subject=o))
        except EvalError as exc:
            raise EvalError(
                f"verification of property {p.name!r} failed on "
                f"{o.node_name}: {exc}",
                exc.node,
            ) from exc
        return float(result)
    # Opaque qualitative requirement: use the instance's stored degree.
    if isinstance(own, QualitativeProperty) and own.degree is not None:
        return own.degree
    return 0.0


def _method_score(o: ObjectInstance, m: Method) -> float:
    own = o.signature.get(m.name)
    if own is None or own.arity != m.arity:
        return 0.0
    if m.body is None:
        return 1.0  # abstract requirement: name + arity suffice
    if own.body is not None and expr_equal(own.body, m.body):
        return 1.0
    return 0.0


def _contains_members(container: ClassDef, contained: ClassDef) -> bool:
    """True iff every member of `contained` has an equivalent member in
    `container` (both core-only)."""
    big = require_homogeneous(container, "subsumes")
    small = require_homogeneous(contained, "subsumes")
    for p in small.specification:
        other = big.specification.get(p.name)
        if other is None or not property_equivalent(p, other):
            return False
    for m in small.signature:
        other = big.signature.get(m.name)
        if other is None or not method_equivalent(m, other):
            return False
    return True


def subsumes(general: ClassDef, specific: ClassDef) -> bool:
    """Proper structural subsumption: every member of `general` has an
    equivalent in `specific`, and the two are not member-for-member
    equivalent."""
    if not _contains_members(specific, general):
        return False
    return not _contains_members(general, specific)


# --- structural comparisons used for deduplication --------------------------


def _core_pair_member_equivalent(
    a_spec: Specification, a_sig: Signature, b_spec: Specification, b_sig: Signature
) -> bool:
    return _specs_equivalent(a_spec, b_spec) and _sigs_equivalent(a_sig, b_sig)


def classes_member_equivalent(a: ClassDef, b: ClassDef) -> bool:
    """Member-for-member equivalence (value-abstracting, order-insensitive
    by name; projection labels ignored, projection order significant)."""
    if (a.core is None) != (b.core is None):
        return False
    if a.core is not None and not _core_pair_member_equivalent(
        a.core.specification, a.core.signature, b.core.specification, b.core.signature
    ):
        return False
    if len(a.projections) != len(b.projections):
        return False
    return all(
        _core_pair_member_equivalent(
            pa.specification, pa.signature, pb.specification, pb.signature
        )
        for pa, pb in zip(a.projections, b.projections)
    )


def _property_state_equal(a: Property, b: Property) -> bool:
    if not property_equivalent(a, b):
        return False
    if isinstance(a, QuantitativeProperty):
        return a.value == b.value
    assert isinstance(b, QualitativeProperty)
    return a.degree == b.degree


def _method_state_equal(a: Method, b: Method) -> bool:
    return a.parameters == b.parameters and method_equivalent(a, b)


def _spec_state_equal(a: Specification, b: Specification) -> bool:
    if set(a.names) != set(b.names):
        return False
    return all(_property_state_equal(p, b.get(p.name)) for p in a)


def _sig_state_equal(a: Signature, b: Signature) -> bool:
    if set(a.names) != set(b.names):
        return False
    return all(_method_state_equal(m, b.get(m.name)) for m in a)


def class_state_equal(a: ClassDef, b: ClassDef) -> bool:
    """Structural equality including class-level constrained values and
    stored degrees; names and projection labels ignored.  Used to decide
    whether a derived class duplicates an existing node."""
    if (a.core is None) != (b.core is None):
        return False
    if a.core is not None and not (
        _spec_state_equal(a.core.specification, b.core.specification)
        and _sig_state_equal(a.core.signature, b.core.signature)
    ):
        return False
    if len(a.projections) != len(b.projections):
        return False
    return all(
        _spec_state_equal(pa.specification, pb.specification)
        and _sig_state_equal(pa.signature, pb.signature)
        for pa, pb in zip(a.projections, b.projections)
    )


def object_state_equal(a: ObjectInstance, b: ObjectInstance) -> bool:
    """Structural equality of state (values and degrees included),
    ignoring identifier and clone index."""
    return _spec_state_equal(a.specification, b.specification) and _sig_state_equal(
        a.signature, b.signature
    )
