"""Object-oriented dynamic networks.

A small engine for concept networks built from objects and classes whose
members are quantitative and qualitative properties and methods, with:

- an expression language with a canonical normal form (`oodn.expr`),
- a structural domain model and equivalence judgments (`oodn.model`),
- set-theoretic operations over classes and objects (`oodn.exploiters`),
- declarative node rewrites with effect classification (`oodn.modifiers`),
- an immutable network value with relation inference (`oodn.network`),
- JSON persistence and DOT export (`oodn.io`),
- a command-line front end (`oodn.cli`).
"""

from importlib import resources

from .errors import OodnError
from .expr import (
    EvalContext,
    EvalError,
    ExprError,
    ExprSyntaxError,
    evaluate,
    expr_equal,
    infer_sort,
    normalize,
    parse,
    print_expr,
)
from .exploiters import (
    OperationError,
    OperationResult,
    class_difference,
    class_intersection,
    class_symmetric_difference,
    class_union,
    clone_object,
    induced_class,
    object_union,
)
from .io import LoadError, export_dot, load_file, load_text, save_file, save_text
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
    member_equivalent,
    method_equivalent,
    objects_similar,
    property_equivalent,
    satisfies,
    subsumes,
)
from .modifiers import Modifier, ModifierError, ModifierKind, classify, compose
from .network import (
    Network,
    NetworkError,
    NodeRef,
    Relation,
    add_class,
    add_modifier,
    add_object,
    apply_exploiter,
    apply_modifier,
    declare_relation,
    empty_network,
    infer_relations,
    instances_of,
    neighbors,
    reachable,
    subclasses_of,
    with_inferred,
)

__version__ = "0.1.0"


def fixture_text(name: str) -> str:
    """The text of a packaged example network document, e.g.
    ``fixture_text("polygons.oodn.json")``."""
    return (resources.files(__name__) / "data" / name).read_text(encoding="utf-8")


def load_fixture(name: str) -> Network:
    """A packaged example network, parsed and validated."""
    return load_text(fixture_text(name))
