import itertools
import json
from decimal import Decimal

import pytest

from framewatch.evaluation import (
    AssignmentError,
    Batch,
    EvalMatch,
    Journal,
    Judgment,
    UnjudgedError,
    append_journal,
    assign_round1,
    assign_round2,
    dedupe,
    error_distribution,
    load_journal,
    load_matches,
    precision_table,
    round_percentage,
    round_ratio,
    table_from_counts,
)

TABLE1 = [
    ("Abandonment of child/elderly", 92, 27, "0.773"),
    ("Abuse by family member or person related to the victim", 483, 140, "0.775"),
    ("Abuse of child/elderly", 92, 17, "0.844"),
    ("Injury by family member or person related to the victim", 493, 386, "0.560"),
    ("Physical violence by family member or person related to the victim", 574, 1013, "0.362"),
    ("Sexual violence by family member or person related to the victim", 57, 43, "0.570"),
    ("Sexual abuse", 362, 90, "0.800"),
    ("Violence by family member or person related to the victim", 525, 66, "0.888"),
]
TABLE1_OVERALL = (2678, 1782, "0.600")
TABLE2_OVERALL = (3241, 1220, "0.726")


def reproduces(correct: int, error: int, published: str) -> bool:
    """Published-precision agreement: the exact ratio sits within half a
    print quantum of no published cell other than its own, i.e. differs from
    the published 3-decimal value by less than 0.001."""
    exact = Decimal(correct) / Decimal(correct + error)
    return abs(exact - Decimal(published)) < Decimal("0.001")


def match(mid, pattern="p", text=None, doc="d", sent=None):
    return EvalMatch(
        match_id=mid,
        pattern_id=pattern,
        pattern_name=pattern,
        doc_id=doc,
        sent_id=sent or mid,
        text=text if text is not None else f"texto {mid}",
    )


def judged(journal, mid, verdict, annotator="a1", round_name="r1", violence_type=None):
    journal.upsert(Judgment(mid, annotator, round_name, verdict, violence_type))


# -- rounding and published-table arithmetic -----------------------------------------


def test_round_ratio_half_up():
    assert round_ratio(483, 623) == Decimal("0.775")
    assert round_ratio(1, 1) == Decimal("1.000")
    assert round_ratio(1, 8) == Decimal("0.125")
    assert round_ratio(1, 3) == Decimal("0.333")
    # Half-up at the third decimal.
    assert round_ratio(5, 8000) == Decimal("0.001")


def test_table1_counts_reproduce_published_precisions():
    table = table_from_counts([(name, c, e) for name, c, e, _ in TABLE1])
    for row, (_, correct, error, published) in zip(table.rows, TABLE1):
        assert (row.correct, row.error) == (correct, error)
        assert reproduces(row.correct, row.error, published)
    assert table.overall.correct == TABLE1_OVERALL[0]
    assert table.overall.error == TABLE1_OVERALL[1]
    assert str(table.overall.precision) == TABLE1_OVERALL[2]


def test_table2_overall_reproduces_published_value():
    correct, error, published = TABLE2_OVERALL
    assert reproduces(correct, error, published)


def test_percentage_rounding():
    assert round_percentage(110, 345) == Decimal("31.9")
    assert round_percentage(1, 1) == Decimal("100.0")
    assert round_percentage(1, 3) == Decimal("33.3")


# -- dedupe ---------------------------------------------------------------------------


def test_dedupe_counts_shaped_like_the_evaluation_sample():
    matches = []
    for i in range(4186):
        matches.append(match(f"m{i:05d}", text=f"texto distinto {i}"))
    for i in range(814):  # duplicates of the first 814 texts
        matches.append(match(f"dup{i:05d}", doc="z", text=f"texto distinto {i}"))
    assert len(matches) == 5000
    assert len(dedupe(matches)) == 4186


def test_dedupe_all_distinct_unchanged():
    matches = [match(f"m{i}") for i in range(10)]
    assert dedupe(matches) == matches


def test_dedupe_keeps_smallest_key_and_normalizes_whitespace():
    a = match("m2", doc="db", text="um  texto\trepetido ")
    b = match("m1", doc="da", text="um texto repetido")
    assert [m.match_id for m in dedupe([a, b])] == ["m1"]


def test_dedupe_idempotent():
    matches = [match(f"m{i}", text=f"t{i % 7}") for i in range(30)]
    once = dedupe(matches)
    assert dedupe(once) == once


# -- batching -------------------------------------------------------------------------


def test_round1_sizes_differ_by_at_most_one():
    batches = assign_round1([match(f"m{i}") for i in range(10)], ["a", "b", "c"], seed=5)
    sizes = sorted(len(b.match_ids) for b in batches)
    assert sizes == [3, 3, 4]
    covered = list(itertools.chain.from_iterable(b.match_ids for b in batches))
    assert sorted(covered) == [f"m{i}" for i in range(10)]
    assert len(set(covered)) == 10


def test_round1_single_annotator():
    batches = assign_round1([match(f"m{i}") for i in range(4)], ["solo"], seed=0)
    assert len(batches) == 1 and len(batches[0].match_ids) == 4


def test_round1_seed_reproducible():
    matches = [match(f"m{i}") for i in range(20)]
    assert assign_round1(matches, ["a", "b"], seed=9) == assign_round1(matches, ["a", "b"], seed=9)
    assert assign_round1(matches, ["a", "b"], seed=9) != assign_round1(matches, ["a", "b"], seed=10)


def test_round1_empty_matches_error():
    with pytest.raises(AssignmentError):
        assign_round1([], ["a"], seed=0)


def test_round2_two_annotators_swap():
    matches = [match(f"m{i}") for i in range(6)]
    journal = Journal()
    r1 = assign_round1(matches, ["a", "b"], seed=1)
    holders = {mid: b.annotator_id for b in r1 for mid in b.match_ids}
    for mid in holders:
        judged(journal, mid, "non_match", annotator=holders[mid])
    r2 = assign_round2(r1, journal.judgments.values(), ["a", "b"], seed=2)
    r2_holders = {mid: b.annotator_id for b in r2 for mid in b.match_ids}
    assert set(r2_holders) == set(holders)
    for mid in holders:
        assert r2_holders[mid] != holders[mid]


def test_round2_covers_exactly_the_non_match_set():
    matches = [match(f"m{i}") for i in range(9)]
    journal = Journal()
    r1 = assign_round1(matches, ["a", "b", "c"], seed=3)
    holders = {mid: b.annotator_id for b in r1 for mid in b.match_ids}
    verdicts = {}
    for i, mid in enumerate(sorted(holders)):
        verdicts[mid] = "exact" if i % 3 == 0 else "non_match"
        judged(journal, mid, verdicts[mid], annotator=holders[mid])
    r2 = assign_round2(r1, journal.judgments.values(), ["a", "b", "c"], seed=4)
    covered = sorted(itertools.chain.from_iterable(b.match_ids for b in r2))
    assert covered == sorted(mid for mid, v in verdicts.items() if v == "non_match")


def test_round2_one_annotator_is_an_error():
    matches = [match("m0")]
    journal = Journal()
    r1 = assign_round1(matches, ["a"], seed=0)
    judged(journal, "m0", "non_match", annotator="a")
    with pytest.raises(AssignmentError):
        assign_round2(r1, journal.judgments.values(), ["a"], seed=0)


def test_round1_overlap_fraction_duplicates_some_matches():
    matches = [match(f"m{i}") for i in range(20)]
    batches = assign_round1(matches, ["a", "b", "c"], seed=4, overlap_fraction=0.25)
    counts: dict[str, int] = {}
    for b in batches:
        for mid in b.match_ids:
            counts[mid] = counts.get(mid, 0) + 1
    assert len(counts) == 20  # still full cover
    assert sum(1 for c in counts.values() if c == 2) == 5  # 25% handed to a second annotator
    assert all(c in (1, 2) for c in counts.values())
    # Default stays a strict partition.
    plain = assign_round1(matches, ["a", "b", "c"], seed=4)
    assert sum(len(b.match_ids) for b in plain) == 20


def test_round2_excludes_every_round1_holder_of_overlap_items():
    matches = [match(f"m{i}") for i in range(12)]
    r1 = assign_round1(matches, ["a", "b", "c"], seed=8, overlap_fraction=0.5)
    holders: dict[str, set[str]] = {}
    for b in r1:
        for mid in b.match_ids:
            holders.setdefault(mid, set()).add(b.annotator_id)
    journal = Journal()
    for mid, hs in holders.items():
        for h in hs:
            judged(journal, mid, "non_match", annotator=h)
    r2 = assign_round2(r1, journal.judgments.values(), ["a", "b", "c"], seed=9)
    for b in r2:
        for mid in b.match_ids:
            assert b.annotator_id not in holders[mid]


def test_round2_empty_non_match_set_gives_empty_batches():
    matches = [match("m0")]
    journal = Journal()
    r1 = assign_round1(matches, ["a", "b"], seed=0)
    judged(journal, "m0", "exact", annotator="a")
    r2 = assign_round2(r1, journal.judgments.values(), ["a", "b"], seed=0)
    assert all(b.match_ids == () for b in r2)


# -- precision tables --------------------------------------------------------------------


def build_judged_universe(per_pattern, r2_flips=None):
    """per_pattern: name -> (correct, error) in round 1; r2_flips: name ->
    number of round-1 errors reclassified as GBV-positive in round 2."""
    matches, journal = [], Journal()
    r2_flips = r2_flips or {}
    i = 0
    for name, (correct, error) in per_pattern.items():
        for k in range(correct):
            m = match(f"m{i}", pattern=name, text=f"texto {i}")
            matches.append(m)
            judged(journal, m.match_id, "exact", annotator="a1")
            i += 1
        flips = r2_flips.get(name, 0)
        for k in range(error):
            m = match(f"m{i}", pattern=name, text=f"texto {i}")
            matches.append(m)
            judged(journal, m.match_id, "non_match", annotator="a1")
            verdict = "gbv_other_pattern" if k < flips else "not_gbv"
            judged(journal, m.match_id, verdict, annotator="a2", round_name="r2")
            i += 1
    return matches, journal


def test_precision_table_round1_from_journal():
    matches, journal = build_judged_universe({"A": (483, 140), "B": (92, 27)})
    table = precision_table(journal, matches, "r1")
    by_name = {r.pattern: r for r in table.rows}
    assert str(by_name["A"].precision) == "0.775"
    assert str(by_name["B"].precision) == "0.773"
    assert table.overall.correct == 575 and table.overall.error == 167


def test_precision_table_round2_reclassification():
    matches, journal = build_judged_universe({"A": (10, 8)}, r2_flips={"A": 5})
    table = precision_table(journal, matches, "r2")
    (row,) = table.rows
    assert (row.correct, row.error) == (15, 3)


def test_precision_table_unjudged_error_lists_ids():
    matches, journal = build_judged_universe({"A": (2, 1)})
    matches.append(match("mzz", pattern="A", text="texto novo"))
    with pytest.raises(UnjudgedError) as excinfo:
        precision_table(journal, matches, "r1")
    assert "mzz" in excinfo.value.match_ids


def test_precision_table_partial_mode_flags_incomplete():
    matches, journal = build_judged_universe({"A": (2, 1)})
    matches.append(match("mzz", pattern="A", text="texto novo"))
    table = precision_table(journal, matches, "r1", strict=False)
    assert table.incomplete is True
    assert table.overall.correct == 2 and table.overall.error == 1


def test_precision_table_permutation_invariant():
    matches, journal = build_judged_universe({"A": (5, 3), "B": (2, 2)})
    shuffled = Journal()
    for j in reversed(list(journal.judgments.values())):
        shuffled.upsert(j)
    assert precision_table(journal, matches, "r1").to_tsv() == precision_table(shuffled, matches, "r1").to_tsv()


def test_r2_judgment_on_exact_match_is_ignored_in_tables():
    matches, journal = build_judged_universe({"A": (1, 1)}, r2_flips={"A": 1})
    # Maliciously add an r2 record for the exact-matched item.
    exact_id = matches[0].match_id
    judged(journal, exact_id, "not_gbv", annotator="a2", round_name="r2")
    table = precision_table(journal, matches, "r2")
    (row,) = table.rows
    assert (row.correct, row.error) == (2, 0)


# -- error distribution --------------------------------------------------------------------


TABLE3 = [
    ("Psychological", 110, "31.9"),
    ("Witnessed", 75, "21.7"),
    ("Aggressive patient", 42, "12.2"),
    ("Verbal", 33, "9.6"),
    ("Abandonment", 25, "7.2"),
    ("Self-inflicted", 25, "7.2"),
]


def test_error_distribution_reproduces_table3_counts():
    journal = Journal()
    i = 0
    for name, count, _ in TABLE3:
        for _ in range(count):
            judged(journal, f"m{i}", "gbv_other_pattern", annotator="a", round_name="r2", violence_type=name)
            i += 1
    minor_types = ["Financial", "Institutional", "Neglect", "Obstetric", "Patrimonial"]
    for k in range(35):
        judged(
            journal, f"m{i}", "gbv_other_pattern", annotator="a", round_name="r2",
            violence_type=minor_types[k % len(minor_types)],
        )
        i += 1
    table = error_distribution(journal.judgments.values(), top_k=6)
    assert table.total == 345
    named = [(r.violence_type, r.count, str(r.percentage)) for r in table.rows]
    assert named[:6] == TABLE3
    assert named[6][0] == "Other" and named[6][1] == 35


def test_error_distribution_single_type():
    journal = Journal()
    judged(journal, "m0", "partial", round_name="r2", violence_type="Verbal")
    table = error_distribution(journal.judgments.values())
    assert [(r.violence_type, r.count, str(r.percentage)) for r in table.rows] == [("Verbal", 1, "100.0")]


def test_error_distribution_three_type_fixture():
    journal = Journal()
    for i, vt in enumerate(["A"] * 6 + ["B"] * 3 + ["C"] * 1):
        judged(journal, f"m{i}", "partial", round_name="r2", violence_type=vt)
    table = error_distribution(journal.judgments.values(), top_k=2)
    named = [(r.violence_type, r.count, str(r.percentage)) for r in table.rows]
    assert named == [("A", 6, "60.0"), ("B", 3, "30.0"), ("Other", 1, "10.0")]


def test_error_distribution_ignores_r1_and_untyped():
    journal = Journal()
    judged(journal, "m0", "non_match", round_name="r1")
    judged(journal, "m1", "not_gbv", round_name="r2")
    assert error_distribution(journal.judgments.values()).total == 0


# -- journal persistence ----------------------------------------------------------------


def test_journal_roundtrip_and_upsert(tmp_path):
    path = str(tmp_path / "journal.jsonl")
    batch = Batch("a1", "r1", ("m0", "m1"))
    append_journal(path, [batch.to_record()])
    append_journal(path, [Judgment("m0", "a1", "r1", "exact", timestamp=1.0).to_record()])
    append_journal(path, [Judgment("m0", "a1", "r1", "non_match", timestamp=2.0).to_record()])

    journal = load_journal(path)
    assert journal.batches["r1"][0] == batch
    assert journal.judgments[("m0", "a1", "r1")].verdict == "non_match"
    # History stays in the file as the audit trail.
    lines = [json.loads(l) for l in open(path, encoding="utf-8")]
    assert len(lines) == 3


def test_journal_upsert_idempotence():
    journal = Journal()
    j = Judgment("m0", "a1", "r1", "exact")
    assert journal.upsert(j) is True
    assert journal.upsert(j) is False
    assert journal.upsert(Judgment("m0", "a1", "r1", "non_match")) is True


def test_judgment_verdict_validation():
    with pytest.raises(Exception):
        Judgment("m0", "a1", "r1", "gbv_other_pattern").validate()
    with pytest.raises(Exception):
        Judgment("m0", "a1", "r2", "exact").validate()
    Judgment("m0", "a1", "r2", "speculation").validate()


def test_load_matches_roundtrip(tmp_path):
    path = tmp_path / "matches.jsonl"
    record = {
        "match_id": "p:d:s:0", "pattern_id": "p", "pattern_name": "P", "doc_id": "d",
        "sent_id": "s", "text": "um texto", "anchor_set": "d:s:0", "anchor_frame": "Fear",
        "target": [0, 1], "bindings": [{"role": "Stimulus", "span": [1, 2], "filler_set": "d:s:1"}],
    }
    path.write_text(json.dumps(record) + "\n", encoding="utf-8")
    (m,) = load_matches(str(path))
    assert m.match_id == "p:d:s:0"
    assert m.bindings == (("Stimulus", (1, 2), "d:s:1"),)
