"""The concept network: objects, classes, typed relations, enabled
exploiters, and modifiers, as one immutable value.

Every operation returns a new network snapshot; prior snapshots stay
valid.  Structural deduplication is on by default: applying a modifier
or exploiter whose result matches an existing node (state equality)
links to that node instead of adding a twin.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Sequence

from .errors import OodnError
from .exploiters import (
    OperationResult,
    class_difference,
    class_intersection,
    class_symmetric_difference,
    class_union,
    clone_object,
    object_union,
)
from .model import (
    ClassDef,
    ObjectInstance,
    class_state_equal,
    object_state_equal,
    satisfies,
    subsumes,
)
from .modifiers import CLASS, OBJECT, Modifier, apply_to_class, apply_to_object


class NetworkError(OodnError):
    """Duplicate names, dangling references, or disabled operations."""


EXPLOITER_NAMES = frozenset(
    {"union", "intersection", "difference", "symmetric-difference", "clone"}
)

RELATION_KINDS = frozenset(
    {"instance-of", "is-a", "a-kind-of", "modification-of", "result-of", "operand-of"}
)

# is-a is a query alias of a-kind-of: both name structural subsumption.
_SUBSUMPTION_KINDS = frozenset({"is-a", "a-kind-of"})

PROVENANCES = ("declared", "inferred", "recorded")


@dataclass(frozen=True)
class NodeRef:
    kind: str  # "object" | "class"
    name: str
    clone_index: int = 0

    def __post_init__(self):
        if self.kind not in (OBJECT, CLASS):
            raise NetworkError(f"node kind must be 'object' or 'class': {self.kind!r}")
        if not self.name:
            raise NetworkError("node name must be nonempty")
        if self.kind == CLASS and self.clone_index:
            raise NetworkError("classes carry no clone index")

    @property
    def display(self) -> str:
        if self.kind == OBJECT and self.clone_index:
            return f"{self.name}#{self.clone_index}"
        return self.name

    def sort_key(self):
        return (self.kind, self.name, self.clone_index)


def object_ref(o: ObjectInstance) -> NodeRef:
    return NodeRef(OBJECT, o.identifier, o.clone_index)


def class_ref(t: ClassDef) -> NodeRef:
    return NodeRef(CLASS, t.name)


@dataclass(frozen=True)
class Relation:
    source: NodeRef
    target: NodeRef
    kind: str
    provenance: str = "declared"

    def __post_init__(self):
        if not self.kind:
            raise NetworkError("relation kind must be nonempty")
        if self.provenance not in PROVENANCES:
            raise NetworkError(f"unknown provenance {self.provenance!r}")

    @property
    def triple(self):
        return (self.source, self.target, self.kind)

    def sort_key(self):
        return (self.kind, self.source.sort_key(), self.target.sort_key(), self.provenance)


@dataclass(frozen=True)
class Network:
    objects: tuple = ()
    classes: tuple = ()
    relations: tuple = ()
    exploiters: frozenset = EXPLOITER_NAMES
    modifiers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "classes", tuple(self.classes))
        object.__setattr__(self, "relations", tuple(self.relations))
        object.__setattr__(self, "exploiters", frozenset(self.exploiters))
        object.__setattr__(self, "modifiers", tuple(self.modifiers))

        unknown = self.exploiters - EXPLOITER_NAMES
        if unknown:
            raise NetworkError(f"unknown exploiters: {sorted(unknown)}")
        seen = set()
        for o in self.objects:
            key = (o.identifier, o.clone_index)
            if key in seen:
                raise NetworkError(f"duplicate object {o.node_name!r}")
            seen.add(key)
        names = set()
        for t in self.classes:
            if t.name in names:
                raise NetworkError(f"duplicate class {t.name!r}")
            names.add(t.name)
        mod_names = set()
        for m in self.modifiers:
            if m.name in mod_names:
                raise NetworkError(f"duplicate modifier {m.name!r}")
            mod_names.add(m.name)
        triples = set()
        for r in self.relations:
            if r.triple in triples:
                raise NetworkError(
                    f"duplicate relation {r.source.display} -{r.kind}-> {r.target.display}"
                )
            triples.add(r.triple)
            self._require(r.source)
            self._require(r.target)

    # --- resolution ---------------------------------------------------------

    def find_class(self, name: str) -> ClassDef | None:
        for t in self.classes:
            if t.name == name:
                return t
        return None

    def find_object(self, identifier: str, clone_index: int = 0) -> ObjectInstance | None:
        for o in self.objects:
            if o.identifier == identifier and o.clone_index == clone_index:
                return o
        return None

    def find_modifier(self, name: str) -> Modifier | None:
        for m in self.modifiers:
            if m.name == name:
                return m
        return None

    def resolve(self, ref: NodeRef):
        node = self._lookup(ref)
        if node is None:
            raise NetworkError(f"unresolved {ref.kind} reference {ref.display!r}")
        return node

    def _lookup(self, ref: NodeRef):
        if ref.kind == CLASS:
            return self.find_class(ref.name)
        return self.find_object(ref.name, ref.clone_index)

    def _require(self, ref: NodeRef) -> None:
        if self._lookup(ref) is None:
            raise NetworkError(f"relation endpoint does not resolve: {ref.display!r}")


def empty_network(exploiters=EXPLOITER_NAMES) -> Network:
    return Network(exploiters=exploiters)


# --- growth ------------------------------------------------------------------


def add_object(n: Network, o: ObjectInstance) -> Network:
    if n.find_object(o.identifier, o.clone_index) is not None:
        raise NetworkError(f"object {o.node_name!r} already present")
    return dataclasses.replace(n, objects=n.objects + (o,))


def add_class(n: Network, t: ClassDef) -> Network:
    if n.find_class(t.name) is not None:
        raise NetworkError(f"class {t.name!r} already present")
    return dataclasses.replace(n, classes=n.classes + (t,))


def add_modifier(n: Network, m: Modifier) -> Network:
    if n.find_modifier(m.name) is not None:
        raise NetworkError(f"modifier {m.name!r} already present")
    return dataclasses.replace(n, modifiers=n.modifiers + (m,))


def declare_relation(n: Network, r: Relation) -> Network:
    n._require(r.source)
    n._require(r.target)
    if any(r.triple == existing.triple for existing in n.relations):
        raise NetworkError(
            f"relation {r.source.display} -{r.kind}-> {r.target.display} already present"
        )
    return dataclasses.replace(n, relations=n.relations + (r,))


def _append_relations(n: Network, relations: Sequence[Relation]) -> Network:
    existing = {r.triple for r in n.relations}
    fresh = []
    for r in relations:
        if r.triple not in existing:
            fresh.append(r)
            existing.add(r.triple)
    if not fresh:
        return n
    return dataclasses.replace(n, relations=n.relations + tuple(fresh))


# --- inference ---------------------------------------------------------------


def infer_relations(n: Network, threshold: float = 1.0) -> tuple:
    """Structural relations entailed by the current nodes: one
    subsumption edge (a-kind-of) per subsuming class pair, transitive
    pairs included, plus instance-of edges to each object's most
    specific satisfied classes."""
    homogeneous = [t for t in n.classes if t.is_homogeneous]
    edges = []
    for general in homogeneous:
        for specific in homogeneous:
            if general is specific:
                continue
            if subsumes(general, specific):
                edges.append(
                    Relation(class_ref(specific), class_ref(general), "a-kind-of", "inferred")
                )
    for o in n.objects:
        satisfied = [t for t in homogeneous if satisfies(o, t, threshold) >= threshold]
        for t in satisfied:
            more_specific = [
                u for u in satisfied if u is not t and subsumes(t, u)
            ]
            if not more_specific:
                edges.append(
                    Relation(object_ref(o), class_ref(t), "instance-of", "inferred")
                )
    return tuple(sorted(edges, key=Relation.sort_key))


def with_inferred(n: Network, threshold: float = 1.0) -> Network:
    return _append_relations(n, infer_relations(n, threshold))


# --- modifier application ----------------------------------------------------


def _fresh_class_name(n: Network, base: str) -> str:
    name = base
    suffix = 2
    while n.find_class(name) is not None:
        name = f"{base}#{suffix}"
        suffix += 1
    return name


def _fresh_object_identifier(n: Network, base: str) -> str:
    name = base
    suffix = 2
    while n.find_object(name) is not None:
        name = f"{base}#{suffix}"
        suffix += 1
    return name


def apply_modifier(
    n: Network, modifier_name: str, target: NodeRef, dedup: bool = True
) -> tuple[Network, NodeRef]:
    """Apply a registered modifier to a node.  The result is added under a
    derived name unless a state-equal node already exists (dedup); either
    way a recorded modification-of edge links target to result."""
    modifier = n.find_modifier(modifier_name)
    if modifier is None:
        raise NetworkError(f"unknown modifier {modifier_name!r}")
    node = n.resolve(target)

    if target.kind == CLASS:
        result = apply_to_class(modifier, node)
        existing = None
        if dedup:
            existing = next(
                (t for t in n.classes if class_state_equal(t, result)), None
            )
        if existing is not None:
            result_ref = class_ref(existing)
        else:
            named = dataclasses.replace(
                result, name=_fresh_class_name(n, f"{modifier_name}({target.display})")
            )
            n = add_class(n, named)
            result_ref = class_ref(named)
    else:
        result = apply_to_object(modifier, node)
        existing = None
        if dedup:
            existing = next(
                (o for o in n.objects if object_state_equal(o, result)), None
            )
        if existing is not None:
            result_ref = object_ref(existing)
        else:
            named = dataclasses.replace(
                result,
                identifier=_fresh_object_identifier(
                    n, f"{modifier_name}({target.display})"
                ),
                clone_index=0,
            )
            n = add_object(n, named)
            result_ref = object_ref(named)

    n = _append_relations(
        n, [Relation(target, result_ref, "modification-of", "recorded")]
    )
    return n, result_ref


# --- exploiter application ---------------------------------------------------


def _operand_classes(n: Network, operands: Sequence[NodeRef]) -> list:
    out = []
    for ref in operands:
        if ref.kind != CLASS:
            raise NetworkError(
                f"operand {ref.display!r} must be a class for this exploiter"
            )
        out.append(n.resolve(ref))
    return out


def _record_result(
    n: Network, operands: Sequence[NodeRef], result_ref: NodeRef
) -> Network:
    edges = []
    for ref in operands:
        edges.append(Relation(ref, result_ref, "operand-of", "recorded"))
        edges.append(Relation(result_ref, ref, "result-of", "recorded"))
    return _append_relations(n, edges)


def _add_result_class(
    n: Network, result: ClassDef, dedup: bool
) -> tuple[Network, NodeRef]:
    if dedup:
        existing = next((t for t in n.classes if class_state_equal(t, result)), None)
        if existing is not None:
            return n, class_ref(existing)
    named = dataclasses.replace(result, name=_fresh_class_name(n, result.name))
    return add_class(n, named), class_ref(named)


def apply_exploiter(
    n: Network,
    op: str,
    operands: Sequence[NodeRef],
    clone_index: int | None = None,
    dedup: bool = True,
) -> tuple[Network, NodeRef | None, OperationResult | None]:
    """Run an enabled exploiter over resolved operands.  Present results
    are added (with dedup) and linked via recorded operand-of/result-of
    edges; absent results leave the network unchanged and return no node."""
    if op not in EXPLOITER_NAMES:
        raise NetworkError(f"unknown exploiter {op!r}")
    if op not in n.exploiters:
        raise NetworkError(f"exploiter {op!r} is not enabled in this network")

    if op == "clone":
        if len(operands) != 1 or operands[0].kind != OBJECT:
            raise NetworkError("clone takes exactly one object operand")
        original = n.resolve(operands[0])
        if clone_index is None:
            taken = {
                o.clone_index
                for o in n.objects
                if o.identifier == original.identifier
            }
            clone_index = 1
            while clone_index in taken:
                clone_index += 1
        clone = clone_object(original, clone_index)
        if n.find_object(clone.identifier, clone.clone_index) is not None:
            raise NetworkError(
                f"clone index {clone_index} already used for {original.identifier!r}"
            )
        n = add_object(n, clone)
        result_ref = object_ref(clone)
        n = _record_result(n, operands, result_ref)
        return n, result_ref, None

    if op == "union" and operands and all(ref.kind == OBJECT for ref in operands):
        objects = [n.resolve(ref) for ref in operands]
        result_objects, result = object_union(objects)
        for o in result_objects:
            if n.find_object(o.identifier, o.clone_index) is None:
                n = add_object(n, o)
        n, result_ref = _add_result_class(n, result.class_def, dedup)
        n = _record_result(n, operands, result_ref)
        return n, result_ref, result

    if op == "union":
        classes = _operand_classes(n, operands)
        if len(classes) < 2:
            raise NetworkError("union needs at least two operands")
        result = class_union(classes)
    else:
        classes = _operand_classes(n, operands)
        if len(classes) != 2:
            raise NetworkError(f"{op} takes exactly two class operands")
        fn = {
            "intersection": class_intersection,
            "difference": class_difference,
            "symmetric-difference": class_symmetric_difference,
        }[op]
        result = fn(classes[0], classes[1])

    if not result.exists:
        return n, None, result
    n, result_ref = _add_result_class(n, result.class_def, dedup)
    n = _record_result(n, operands, result_ref)
    return n, result_ref, result


# --- queries -----------------------------------------------------------------


def _kind_matches(edge_kind: str, query_kind: str | None) -> bool:
    if query_kind is None:
        return True
    if query_kind in _SUBSUMPTION_KINDS:
        return edge_kind in _SUBSUMPTION_KINDS
    return edge_kind == query_kind


def neighbors(
    n: Network, ref: NodeRef, kind: str | None = None, direction: str = "out"
) -> tuple:
    """Directly connected nodes, sorted by name; direction in {out, in, both}."""
    n.resolve(ref)
    if direction not in ("out", "in", "both"):
        raise NetworkError(f"unknown direction {direction!r}")
    found = set()
    for r in n.relations:
        if not _kind_matches(r.kind, kind):
            continue
        if direction in ("out", "both") and r.source == ref:
            found.add(r.target)
        if direction in ("in", "both") and r.target == ref:
            found.add(r.source)
    return tuple(sorted(found, key=NodeRef.sort_key))


def reachable(n: Network, ref: NodeRef, kind: str) -> tuple:
    """Transitive closure along edges of the given kind, excluding the
    start node unless it lies on a cycle."""
    n.resolve(ref)
    seen = set()
    frontier = [ref]
    while frontier:
        current = frontier.pop()
        for r in n.relations:
            if r.source == current and _kind_matches(r.kind, kind):
                if r.target not in seen:
                    seen.add(r.target)
                    frontier.append(r.target)
    return tuple(sorted(seen, key=NodeRef.sort_key))


def instances_of(n: Network, class_name: str) -> tuple:
    """Objects with an instance-of edge to the class, sorted by name."""
    ref = NodeRef(CLASS, class_name)
    n.resolve(ref)
    found = {
        r.source
        for r in n.relations
        if r.kind == "instance-of" and r.target == ref
    }
    return tuple(sorted(found, key=NodeRef.sort_key))


def subclasses_of(n: Network, class_name: str) -> tuple:
    """Classes reaching the given class along subsumption edges
    (is-a / a-kind-of treated as aliases), sorted by name."""
    ref = NodeRef(CLASS, class_name)
    n.resolve(ref)
    seen = set()
    frontier = [ref]
    while frontier:
        current = frontier.pop()
        for r in n.relations:
            if r.target == current and r.kind in _SUBSUMPTION_KINDS:
                if r.source not in seen:
                    seen.add(r.source)
                    frontier.append(r.source)
    return tuple(sorted(seen, key=NodeRef.sort_key))
