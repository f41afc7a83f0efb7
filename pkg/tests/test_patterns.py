import json

import pytest

from framewatch.corpus import build_index
from framewatch.oracle import oracle_match_corpus
from framewatch.patterns import (
    Pattern,
    PatternCompileError,
    compile_pattern,
    compile_patterns,
    match_corpus,
    match_sentence,
    retention_filter,
    sample_for_inspection,
)
from framewatch.synth import synth_corpus, synth_patterns


def write_patterns(tmp_path, records, name="patterns.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(json.dumps(r, ensure_ascii=False) for r in records) + "\n", encoding="utf-8")
    return str(path)


def pattern_of(store, anchor_frames, roles=(), lus=None, expand=None, pid="p1"):
    raw_anchor = {"frames": list(anchor_frames)}
    if lus:
        raw_anchor["lus"] = [list(x) for x in lus]
    if expand:
        raw_anchor["expand"] = {"relation": expand[0], "direction": expand[1]}
    raw = {
        "id": pid,
        "name": pid,
        "scenario": "test",
        "anchor": raw_anchor,
        "roles": [{"role": r, "filler": {"frames": list(f)}} for r, f in roles],
    }
    return compile_pattern(raw, store)


# -- compilation ----------------------------------------------------------------


def test_pack_compiles_with_eight_table_patterns(pattern_pack):
    assert len(pattern_pack) == 11
    table1 = [p for p in pattern_pack if p.scenario != "psychological_violence"]
    assert len(table1) == 8
    names = {p.name for p in table1}
    assert "Physical violence by family member or person related to the victim" in names
    assert "Violence by family member or person related to the victim" in names
    documented = [p for p in pattern_pack if not p.reconstructed]
    assert {p.id for p in documented} == {
        "pat_physical_family",
        "pat_injury_family",
        "pat_psy_domain",
        "pat_psy_threat",
        "pat_psy_fear",
    }


def test_typo_in_frame_name_suggests_fix(tmp_path, fixture_store):
    records = [{"id": "p", "name": "p", "anchor": {"frames": ["Kause_harm"]}}]
    with pytest.raises(PatternCompileError) as excinfo:
        compile_patterns(write_patterns(tmp_path, records), fixture_store)
    assert "Cause_harm" in str(excinfo.value)


def test_expand_directive_includes_descendants(fixture_store):
    pattern = pattern_of(fixture_store, ["Undergoing"], expand=("inheritance", "sources"))
    assert "Experience_bodily_harm" in pattern.anchor.frame_names
    assert "Undergoing" in pattern.anchor.frame_names


def test_role_missing_on_every_anchor_frame_is_an_error(tmp_path, fixture_store):
    records = [
        {
            "id": "p", "name": "p",
            "anchor": {"frames": ["Fear"]},
            "roles": [{"role": "Nonexistent_role", "filler": {"frames": ["Kinship"]}}],
        }
    ]
    with pytest.raises(PatternCompileError):
        compile_patterns(write_patterns(tmp_path, records), fixture_store)


def test_role_missing_on_some_anchor_frames_warns(tmp_path, fixture_store):
    records = [
        {
            "id": "p", "name": "p",
            "anchor": {"frames": ["Fear", "Cause_harm"]},
            "roles": [{"role": "Stimulus", "filler": {"frames": ["Kinship"]}}],
        }
    ]
    patterns, warnings = compile_patterns(write_patterns(tmp_path, records), fixture_store)
    assert len(patterns) == 1
    assert warnings and "Cause_harm" in warnings[0]


def test_whitelist_lu_must_belong_to_anchor_frames(fixture_store):
    with pytest.raises(PatternCompileError):
        pattern_of(fixture_store, ["Fear"], lus=[("bater", "v")])


def test_empty_anchor_rejected(tmp_path, fixture_store):
    records = [{"id": "p", "name": "p", "anchor": {"frames": []}}]
    with pytest.raises(PatternCompileError):
        compile_patterns(write_patterns(tmp_path, records), fixture_store)


# -- sentence matching -------------------------------------------------------------


def test_example_sentence_matches_documented_pattern(sample_corpus, fixture_store):
    s1 = next(s for s in sample_corpus if s.sent_id == "s1")
    pattern = pattern_of(fixture_store, ["Cause_harm"], roles=[("Agent", ["Kinship", "Personal_relationship"])])
    matches = match_sentence(s1.sets, pattern, fixture_store)
    assert len(matches) == 1
    (binding,) = matches[0].bindings
    assert binding.role_name == "Agent"
    filler = next(a for a in s1.sets if a.id == binding.filler_set_id)
    assert filler.frame_name == "Personal_relationship"
    start, end = s1.token_span_to_chars(filler.target)
    assert s1.text()[start:end] == "marido"


def test_no_match_for_absent_filler_frame(sample_corpus, fixture_store):
    s1 = next(s for s in sample_corpus if s.sent_id == "s1")
    pattern = pattern_of(fixture_store, ["Cause_harm"], roles=[("Victim", ["Kinship"])])
    assert match_sentence(s1.sets, pattern, fixture_store) == []


def test_two_anchor_sets_give_two_matches(sample_corpus, fixture_store):
    s1 = next(s for s in sample_corpus if s.sent_id == "s1")
    harm = next(a for a in s1.sets if a.frame_name == "Cause_harm")
    duplicated = list(s1.sets) + [
        type(harm)(
            id=f"{harm.doc_id}:{harm.sent_id}:99",
            doc_id=harm.doc_id,
            sent_id=harm.sent_id,
            target=harm.target,
            frame_name=harm.frame_name,
            lu=harm.lu,
            fe_spans=harm.fe_spans,
        )
    ]
    pattern = pattern_of(fixture_store, ["Cause_harm"], roles=[("Agent", ["Kinship", "Personal_relationship"])])
    assert len(match_sentence(duplicated, pattern, fixture_store)) == 2


def test_anchor_lu_whitelist(sample_corpus, fixture_store):
    s5 = next(s for s in sample_corpus if s.sent_id == "s5")
    with_lu = pattern_of(
        fixture_store, ["Risk_situation"],
        roles=[("Dangerous_entity", ["Kinship", "Personal_relationship"])],
        lus=[("ameaça", "n"), ("ameaçar", "v")],
    )
    wrong_lu = pattern_of(
        fixture_store, ["Risk_situation"],
        roles=[("Dangerous_entity", ["Kinship", "Personal_relationship"])],
        lus=[("risco", "n")],
    )
    assert len(match_sentence(s5.sets, with_lu, fixture_store)) == 1
    assert match_sentence(s5.sets, wrong_lu, fixture_store) == []


def test_overlap_mode_relaxes_containment(fixture_store, sample_corpus):
    s1 = next(s for s in sample_corpus if s.sent_id == "s1")
    # Shrink the Agent span to [4,5) but pretend the filler covers [3,5):
    # containment fails, intersection succeeds.
    harm = next(a for a in s1.sets if a.frame_name == "Cause_harm")
    pr = next(a for a in s1.sets if a.frame_name == "Personal_relationship")
    modified = [
        type(harm)(
            id=harm.id, doc_id=harm.doc_id, sent_id=harm.sent_id, target=harm.target,
            frame_name=harm.frame_name, lu=harm.lu, fe_spans=(("Agent", (3, 4)),),
        ),
        type(pr)(
            id=pr.id, doc_id=pr.doc_id, sent_id=pr.sent_id, target=(3, 5),
            frame_name=pr.frame_name, lu=pr.lu, fe_spans=(),
        ),
    ]
    pattern = pattern_of(fixture_store, ["Cause_harm"], roles=[("Agent", ["Personal_relationship"])])
    assert match_sentence(modified, pattern, fixture_store, overlap="contain") == []
    assert len(match_sentence(modified, pattern, fixture_store, overlap="any")) == 1


def test_removing_a_role_constraint_never_removes_matches(fixture_store):
    corpus = synth_corpus(fixture_store, 120, seed=7)
    index = build_index(corpus)
    for pattern in synth_patterns(fixture_store, 10, seed=11):
        if not pattern.roles:
            continue
        full = {m.match_id for m in match_corpus(corpus, index, [pattern], fixture_store)}
        relaxed_pattern = Pattern(
            id=pattern.id,
            name=pattern.name,
            scenario=pattern.scenario,
            anchor=pattern.anchor,
            roles=pattern.roles[:-1],
        )
        relaxed = {m.match_id for m in match_corpus(corpus, index, [relaxed_pattern], fixture_store)}
        assert full <= relaxed


def test_anchor_frame_soundness(fixture_store, pattern_pack):
    corpus = synth_corpus(fixture_store, 200, seed=3)
    index = build_index(corpus)
    sets_by_id = {a.id: a for s in corpus for a in s.sets}
    by_pattern = {p.id: p for p in pattern_pack}
    for m in match_corpus(corpus, index, pattern_pack, fixture_store):
        assert sets_by_id[m.anchor_set_id].frame_name in by_pattern[m.pattern_id].anchor.frame_names


# -- corpus matching ---------------------------------------------------------------


def test_fixture_corpus_golden_matches(sample_corpus, sample_index, pattern_pack, fixture_store):
    matches = match_corpus(sample_corpus, sample_index, pattern_pack, fixture_store)
    golden = [
        ("pat_abandonment_child_elderly", "demo", "s3", "demo:s3:1", (("Theme", (0, 1), "demo:s3:0"),)),
        ("pat_physical_family", "demo", "s1", "demo:s1:1", (("Agent", (3, 5), "demo:s1:2"),)),
        ("pat_psy_fear", "demo", "s4", "demo:s4:1", (("Stimulus", (3, 5), "demo:s4:2"),)),
        ("pat_psy_threat", "demo", "s5", "demo:s5:1", (("Dangerous_entity", (4, 6), "demo:s5:2"),)),
    ]
    flattened = [
        (m.pattern_id, m.doc_id, m.sent_id, m.anchor_set_id,
         tuple((b.role_name, b.fe_span, b.filler_set_id) for b in m.bindings))
        for m in matches
    ]
    assert flattened == golden


def test_empty_pattern_list(sample_corpus, sample_index, fixture_store):
    assert match_corpus(sample_corpus, sample_index, [], fixture_store) == []


def test_indexed_equals_oracle_on_random_corpora(fixture_store):
    patterns = synth_patterns(fixture_store, 12, seed=23)
    for seed in range(12):
        corpus = synth_corpus(fixture_store, 80, seed=seed)
        index = build_index(corpus)
        fast = match_corpus(corpus, index, patterns, fixture_store)
        slow = oracle_match_corpus(corpus, patterns)
        assert fast == slow


def test_worker_count_does_not_change_output(fixture_store, pattern_pack):
    corpus = synth_corpus(fixture_store, 150, seed=99)
    index = build_index(corpus)
    single = match_corpus(corpus, index, pattern_pack, fixture_store, workers=1)
    multi = match_corpus(corpus, index, pattern_pack, fixture_store, workers=3)
    assert single == multi


def test_unknown_frame_sets_never_match(fixture_store, tmp_path):
    from framewatch.corpus import ingest

    record = {
        "doc_id": "d", "sent_id": "s", "field_tag": "S",
        "tokens": [{"surface": "medo", "lemma": "medo", "pos": "n", "start": 0, "end": 4}],
        "sets": [{"frame": "Fear_unknown_variant", "target": [0, 1], "fes": []}],
    }
    path = tmp_path / "c.jsonl"
    path.write_text(json.dumps(record) + "\n", encoding="utf-8")
    corpus, warnings = ingest(str(path), fixture_store)
    assert warnings
    pattern = pattern_of(fixture_store, ["Fear"])
    assert match_corpus(corpus, build_index(corpus), [pattern], fixture_store) == []


# -- retention and sampling ----------------------------------------------------------


def test_retention_boundary():
    kept, discarded = retention_filter({"a": 29, "b": 30, "c": 0, "d": 31})
    assert kept == ["b", "d"]
    assert discarded == ["a", "c"]


def test_retention_custom_threshold():
    kept, discarded = retention_filter({"a": 5}, min_matches=5)
    assert kept == ["a"] and discarded == []


def test_sample_small_input_passthrough():
    matches = list(range(50))
    assert sample_for_inspection(matches, cap=100, seed=1) == matches


def test_sample_deterministic():
    matches = list(range(1000))
    a = sample_for_inspection(matches, cap=100, seed=42)
    b = sample_for_inspection(matches, cap=100, seed=42)
    assert a == b and len(a) == 100
    assert sample_for_inspection(matches, cap=100, seed=43) != a


def test_sample_uniformity_within_3_sigma():
    # Inclusion count of each item over fixed-seed trials ~ Binomial(n, k/N).
    n_items, cap, trials = 50, 10, 4000
    counts = [0] * n_items
    for t in range(trials):
        for chosen in sample_for_inspection(list(range(n_items)), cap=cap, seed=t):
            counts[chosen] += 1
    mean = trials * cap / n_items
    sigma = (trials * (cap / n_items) * (1 - cap / n_items)) ** 0.5
    for c in counts:
        assert abs(c - mean) <= 3.5 * sigma
