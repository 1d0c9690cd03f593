"""Acceptance suite: ten end-to-end criteria over the packaged fixtures
and randomized inputs.  Each test finishes by printing one PASS line."""

import copy
import json
import random
import time

from hypothesis import given, settings
from hypothesis import strategies as st

from oodn import (
    NodeRef,
    apply_exploiter,
    class_difference,
    class_intersection,
    class_symmetric_difference,
    class_union,
    clone_object,
    evaluate,
    export_dot,
    infer_relations,
    load_text,
    normalize,
    object_union,
    objects_similar,
    parse,
    print_expr,
    save_text,
    with_inferred,
)
from oodn.expr import EvalContext
from oodn.cli import main
from oodn.model import classes_member_equivalent
from oodn.modifiers import ModifierKind, apply_to_class, classify

from .helpers import (
    check_dot,
    member_key,
    members_of,
    oracle_difference,
    oracle_intersection,
    oracle_union,
    projection_names,
    random_class,
    result_core_names,
)
from .strategies import core_only_classes, expressions
from .test_io import networks_equivalent

CORE4 = {"side_count", "side_sizes", "angle_count", "angle_measures"}


def ok(n, detail):
    print(f"criterion {n}: PASS — {detail}")


def test_criterion_1_union_of_three_figures(figures):
    start = time.perf_counter()
    ta, tb, tc = (figures.find_class(n) for n in ["T(A)", "T(B)", "T(C)"])
    result = class_union([ta, tb, tc])
    elapsed = time.perf_counter() - start
    t = result.class_def
    assert result_core_names(t) == CORE4 | {"perimeter"}
    assert [pr.source_label for pr in t.projections] == ["T(A)", "T(B)", "T(C)"]
    assert projection_names(t) == [
        {"triangle_inequality", "area"},
        {"opposite_sides_parallel", "area"},
        {"two_sides_parallel", "area"},
    ]
    assert elapsed < 1.0
    ok(1, f"union core + 3 projections exact, {elapsed * 1000:.1f} ms")


def test_criterion_2_intersection_difference_symmetric(figures):
    ta, tb, tc = (figures.find_class(n) for n in ["T(A)", "T(B)", "T(C)"])
    inter = class_intersection(ta, tb).class_def
    assert result_core_names(inter) == CORE4 | {"perimeter"}
    assert inter.projections == ()

    diff = class_difference(ta, tc).class_def
    assert diff.core is None
    assert projection_names(diff) == [{"triangle_inequality", "area"}]

    sym = class_symmetric_difference(ta, tc).class_def
    assert sym.core is None
    assert projection_names(sym) == [
        {"triangle_inequality", "area"},
        {"two_sides_parallel", "area"},
    ]
    ok(2, "intersection/difference/symmetric difference exact")


def test_criterion_3_cloning_and_multiset_growth(figures):
    a = figures.find_object("A")
    clone = clone_object(a, 1)
    assert objects_similar(a, clone)
    assert clone.node_name != a.node_name

    n, ref, result = apply_exploiter(
        figures, "union", [NodeRef("object", "A"), NodeRef("object", "A")]
    )
    assert {o.node_name for o in result.objects} == {"A", "A#1"}
    assert n.find_object("A", 1) is not None
    ok(3, "clone similar-but-distinct; objectUnion(A, A) grows to two nodes")


def test_criterion_4_inference_exact_edges(polygons):
    edges = infer_relations(polygons, threshold=1.0)
    triples = {(r.source.display, r.kind, r.target.display) for r in edges}
    assert triples == {
        ("R_1", "instance-of", "T(R)"),
        ("S_1", "instance-of", "T(S)"),
        ("T(R)", "a-kind-of", "T(P)"),
        ("T(S)", "a-kind-of", "T(P)"),
        ("T(S)", "a-kind-of", "T(R)"),
    }
    ok(4, "exactly 5 inferred edges, none extra")


def test_criterion_5_modifier_inverse_and_kinds(polygons):
    tr, ts = polygons.find_class("T(R)"), polygons.find_class("T(S)")
    m1 = polygons.find_modifier("M1(T(S))")
    m2 = polygons.find_modifier("M2(T(R))")
    assert classes_member_equivalent(apply_to_class(m2, tr), ts)
    assert classes_member_equivalent(apply_to_class(m1, ts), tr)
    assert classes_member_equivalent(apply_to_class(m1, apply_to_class(m2, tr)), tr)
    assert classify(m1, ts) == {ModifierKind.PARTIAL, ModifierKind.DESTROYING}
    assert classify(polygons.find_modifier("M1(T(R))"), tr) == {ModifierKind.PARTIAL}
    ok(5, "inverse modifier pair + kind sets as specified")


def test_criterion_6_partiality(figures, tmp_path, capsys):
    ta = figures.find_class("T(A)")
    disjoint = load_text(
        json.dumps(
            {
                "format": "oodn/1",
                "classes": [
                    {
                        "name": "x",
                        "core": {
                            "properties": [
                                {
                                    "name": "p",
                                    "kind": "quantitative",
                                    "units": "cm",
                                    "value": None,
                                }
                            ],
                            "methods": [],
                        },
                    }
                ],
            }
        )
    ).find_class("x")
    assert not class_intersection(ta, disjoint).exists
    assert not class_difference(ta, ta).exists
    assert not class_symmetric_difference(ta, ta).exists

    path = tmp_path / "figures.json"
    path.write_text(save_text(figures))
    code = main(["op", str(path), "difference", "T(A)", "T(A)"])
    out = capsys.readouterr().out
    assert code == 1
    assert "does not exist" in out
    ok(6, "absent results first-class; CLI exits 1 with 'does not exist'")


def test_criterion_7_oracle_equivalence():
    rng = random.Random(99)
    pairs = [(random_class(rng, "a"), random_class(rng, "b")) for _ in range(200)]
    start = time.perf_counter()
    for a, b in pairs:
        core, proj_a, proj_b = oracle_union(a, b)
        union = class_union([a, b]).class_def
        assert result_core_names(union) == core
        assert projection_names(union) == [s for s in (proj_a, proj_b) if s]

        inter = class_intersection(a, b)
        got = result_core_names(inter.class_def) if inter.exists else set()
        assert got == oracle_intersection(a, b)

        diff = class_difference(a, b)
        got = projection_names(diff.class_def)[0] if diff.exists else set()
        assert got == oracle_difference(a, b)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    ok(7, f"200/200 random pairs match brute-force oracle in {elapsed:.2f} s")


def test_criterion_8_algebraic_laws():
    checked = [0]

    @settings(max_examples=100, deadline=None)
    @given(core_only_classes("a"), core_only_classes("b"))
    def laws(a, b):
        snap_a, snap_b = copy.deepcopy(a), copy.deepcopy(b)

        def keys(result):
            if not result.exists:
                return frozenset()
            t = result.class_def
            out = set()
            parts = ([t.core] if t.core else []) + list(t.projections)
            for part in parts:
                out |= {member_key(p) for p in part.specification}
                out |= {member_key(m) for m in part.signature}
            return frozenset(out)

        def core_keys(result):
            t = result.class_def
            if not result.exists or t.core is None:
                return frozenset()
            return frozenset(
                {member_key(p) for p in t.core.specification}
                | {member_key(m) for m in t.core.signature}
            )

        # commutativity up to labels
        assert core_keys(class_union([a, b])) == core_keys(class_union([b, a]))
        assert keys(class_intersection(a, b)) == keys(class_intersection(b, a))
        # Core(a ∪ b) = members(a ∩ b)
        assert core_keys(class_union([a, b])) == keys(class_intersection(a, b))
        # partition: members(a) = (a ∩ b) ⊎ (a \ b)
        inter, diff = keys(class_intersection(a, b)), keys(class_difference(a, b))
        assert inter & diff == frozenset()
        assert inter | diff == frozenset(
            member_key(m) for m in members_of(a).values()
        )
        # idempotence
        assert core_keys(class_union([a, a])) == frozenset(
            member_key(m) for m in members_of(a).values()
        )
        assert not class_difference(a, a).exists
        # purity
        assert a == snap_a and b == snap_b
        checked[0] += 1

    laws()
    assert checked[0] >= 100
    ok(8, f"algebraic laws hold on {checked[0]} generated pairs")


def test_criterion_9_expression_suite(polygons):
    checked = [0]

    @settings(max_examples=150, deadline=None)
    @given(expressions())
    def round_trip_and_idempotence(e):
        assert parse(print_expr(e)) == e
        once = normalize(e)
        assert normalize(once) == once
        checked[0] += 1

    round_trip_and_idempotence()
    assert checked[0] >= 100

    angles = parse("all_equal(self.angle_measures.values)")
    s1 = polygons.find_object("S_1")
    r1 = polygons.find_object("R_1")
    assert evaluate(angles, EvalContext(subject=s1)) == 1.0
    assert evaluate(angles, EvalContext(subject=r1)) == 0.0
    ok(9, f"round-trip + idempotence on {checked[0]} expressions; fixture degrees exact")


def test_criterion_10_io(polygons):
    checked = [0]

    @settings(max_examples=100, deadline=None)
    @given(st.lists(core_only_classes(), min_size=1, max_size=3))
    def round_trip(classes):
        from oodn import Network

        n = Network(
            classes=tuple(
                type(t)(name=f"t{i}", core=t.core, projections=t.projections)
                for i, t in enumerate(classes)
            )
        )
        assert networks_equivalent(n, load_text(save_text(n)))
        checked[0] += 1

    round_trip()
    assert checked[0] >= 100

    text = save_text(polygons)
    assert text == save_text(polygons)
    assert save_text(load_text(text)) == text

    dot = export_dot(with_inferred(polygons))
    nodes, edges = check_dot(dot)
    assert nodes == 5
    assert edges == 5
    ok(10, f"round-trip on {checked[0]} networks; deterministic bytes; DOT 5 nodes / 5 edges")
