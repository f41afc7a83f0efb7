import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framewatch.store import (
    Frame,
    FrameRelation,
    FrameStore,
    StoreParseError,
    StoreValidationError,
    UnknownFrameError,
    load_store,
    parse_store,
    serialize_store,
    validate,
)


def write_store(tmp_path, records, name="store.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n", encoding="utf-8")
    return str(path)


MINIMAL = [{"kind": "frame", "name": "Solo", "definition": "A frame on its own."}]


def test_minimal_store_loads(tmp_path):
    store = load_store(write_store(tmp_path, MINIMAL))
    assert len(store.frames) == 1
    assert store.frame("Solo").definition.startswith("A frame")


def test_fixture_store_is_clean(fixture_store):
    assert validate(fixture_store) == []
    assert len(fixture_store.frames) >= 30


def test_fixture_encodes_bodily_harm_frame(fixture_store):
    fes = {fe.name: fe.coreness for fe in fixture_store.frame_elements if fe.frame == "Experience_bodily_harm"}
    assert fes["Body_part"] == "core"
    assert fes["Experiencer"] == "core"
    assert fes["Injuring_entity"] == "peripheral"
    assert fes["Severity"] == "peripheral"
    rels = {
        (r.relation_type, r.source, r.target)
        for r in fixture_store.relations
        if "Experience_bodily_harm" in (r.source, r.target)
    }
    assert ("inchoative_of", "Experience_bodily_harm", "Being_hurt") in rels
    assert ("inheritance", "Experience_bodily_harm", "Undergoing") in rels
    assert ("use", "Cause_harm", "Experience_bodily_harm") in rels


def test_dangling_lu_reference_names_the_lu(tmp_path, fixture_store):
    records = [
        {"kind": "frame", "name": "Kept", "definition": "Still here."},
        {"kind": "lexical_unit", "lemma": "orfão", "pos": "n", "frame": "Deleted", "word_forms": []},
    ]
    with pytest.raises(StoreValidationError) as excinfo:
        load_store(write_store(tmp_path, records))
    kinds = {(v.kind, v.ids) for v in excinfo.value.violations}
    assert ("dangling_reference", ("orfão.n@Deleted",)) in kinds


def test_injected_cycle_is_reported(tmp_path):
    records = [
        {"kind": "frame", "name": "Experience_bodily_harm", "definition": "x"},
        {"kind": "frame", "name": "Undergoing", "definition": "x"},
        {"kind": "frame_relation", "type": "inheritance", "source": "Experience_bodily_harm", "target": "Undergoing"},
        {"kind": "frame_relation", "type": "inheritance", "source": "Undergoing", "target": "Experience_bodily_harm"},
    ]
    violations = validate(parse_store(write_store(tmp_path, records)))
    cycles = [v for v in violations if v.kind == "inheritance_cycle"]
    assert len(cycles) == 1
    assert set(cycles[0].ids) == {"Experience_bodily_harm", "Undergoing"}
    assert "Undergoing->Experience_bodily_harm" in cycles[0].message


def test_bad_coreness_rejected_at_parse(tmp_path):
    records = [
        {"kind": "frame", "name": "F", "definition": "x"},
        {"kind": "frame_element", "frame": "F", "name": "Role", "definition": "x", "coreness": "extra_thematic"},
    ]
    with pytest.raises(StoreParseError) as excinfo:
        parse_store(write_store(tmp_path, records))
    assert excinfo.value.line_no == 2


def test_self_loop_rejected(tmp_path):
    records = [
        {"kind": "frame", "name": "F", "definition": "x"},
        {"kind": "frame_relation", "type": "see_also", "source": "F", "target": "F"},
    ]
    violations = validate(parse_store(write_store(tmp_path, records)))
    assert any(v.kind == "self_loop" for v in violations)


def test_closure_on_fixture(fixture_store):
    up = {f.name for f in fixture_store.closure("Experience_bodily_harm", "inheritance", "targets")}
    assert up == {"Undergoing"}
    down = {f.name for f in fixture_store.closure("Undergoing", "inheritance", "sources")}
    assert down == {"Experience_bodily_harm"}


def test_closure_three_node_chain():
    frames = [Frame(n, "x") for n in ("A", "B", "C")]
    rels = [FrameRelation("inheritance", "A", "B"), FrameRelation("inheritance", "B", "C")]
    store = FrameStore(frames, relations=rels)
    assert {f.name for f in store.closure("A", "inheritance", "targets")} == {"B", "C"}
    assert store.closure("C", "inheritance", "targets") == set()
    assert {f.name for f in store.closure("C", "inheritance", "sources")} == {"A", "B"}


def test_closure_empty_relation_set(fixture_store):
    assert fixture_store.closure("Kinship", "precedence", "targets") == set()


def test_closure_unknown_frame(fixture_store):
    with pytest.raises(UnknownFrameError):
        fixture_store.closure("Nope", "inheritance", "targets")


def test_closure_monotone_on_fixture(fixture_store):
    for frame_name in fixture_store.frames:
        reach = fixture_store.closure(frame_name, "inheritance", "targets")
        for mid in reach:
            inner = fixture_store.closure(mid.name, "inheritance", "targets")
            assert {f.name for f in inner} <= {f.name for f in reach}


def test_lookup_lus(fixture_store):
    hits = fixture_store.lookup_lus("bater", "v")
    assert {lu.id for lu in hits} == {"bater.v@Cause_harm"}
    assert fixture_store.lookup_lus("inexistente", "n") == set()
    # One lemma attached to two frames returns both LUs.
    both = fixture_store.lookup_lus("machucar", "v")
    assert {lu.frame for lu in both} == {"Cause_harm", "Experience_bodily_harm"}


def test_infer_lu(fixture_store):
    assert fixture_store.infer_lu("bater", "v", "Cause_harm").id == "bater.v@Cause_harm"
    assert fixture_store.infer_lu("bater", "v", "Statement") is None
    # Abbreviation resolves through word forms.
    via_form = fixture_store.infer_lu("agr.", "n", "Violence_scenario")
    assert via_form is not None and via_form.lemma == "agressão"


def test_resolve_word_form(fixture_store):
    assert ("bater", "v") in fixture_store.resolve_word_form("bater")
    assert ("agressão", "n") in fixture_store.resolve_word_form("AGR.")
    assert fixture_store.resolve_word_form("zzzz") == set()


def test_qualia_stored_and_queryable(fixture_store):
    relations = fixture_store.qualia_for("faca", "n", "Weapon")
    assert relations, "knife LU should participate in qualia relations"
    quales = {q.quale for q in relations}
    assert "telic" in quales
    assert fixture_store.qualia_for("bater", "v", "Cause_harm") == []


def test_roundtrip_is_canonical(fixture_store, tmp_path):
    first = serialize_store(fixture_store)
    path = tmp_path / "round.jsonl"
    path.write_text(first, encoding="utf-8")
    again = serialize_store(load_store(str(path)))
    assert first == again


def test_all_references_resolve_after_load(fixture_store):
    for fe in fixture_store.frame_elements:
        assert fixture_store.has_frame(fe.frame)
    for rel in fixture_store.relations:
        assert fixture_store.has_frame(rel.source) and fixture_store.has_frame(rel.target)
    for lu in fixture_store.lexical_units:
        assert fixture_store.has_frame(lu.frame)
    for q in fixture_store.qualia:
        assert fixture_store.get_lu(*q.source_lu) is not None
        assert fixture_store.get_lu(*q.target_lu) is not None
        assert fixture_store.has_frame(q.mediating_frame)


@settings(max_examples=40)
@given(st.data())
def test_random_dags_validate_and_back_edges_fail(data):
    from framewatch.synth import inject_back_edge, random_dag_store

    seed = data.draw(st.integers(0, 10_000))
    n = data.draw(st.integers(3, 25))
    store, edges = random_dag_store(n, n_edges=max(1, n), seed=seed)
    assert validate(store) == []
    broken, back_edge = inject_back_edge(store, edges, seed)
    if broken is None:
        return
    cycles = [v for v in validate(broken) if v.kind == "inheritance_cycle"]
    assert cycles
    hit = [v for v in cycles if back_edge[0] in v.ids and back_edge[1] in v.ids]
    assert hit and f"{back_edge[0]}->{back_edge[1]}" in hit[0].message


def test_parse_error_carries_line_number(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"kind": "frame", "name": "A", "definition": "x"}\nnot json\n', encoding="utf-8")
    with pytest.raises(StoreParseError) as excinfo:
        parse_store(str(path))
    assert excinfo.value.line_no == 2


def test_duplicate_frame_flagged(tmp_path):
    records = [
        {"kind": "frame", "name": "Dup", "definition": "x"},
        {"kind": "frame", "name": "Dup", "definition": "y"},
    ]
    violations = validate(parse_store(write_store(tmp_path, records)))
    assert any(v.kind == "duplicate_frame" for v in violations)
