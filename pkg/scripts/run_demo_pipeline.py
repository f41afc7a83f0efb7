#!/usr/bin/env python3
"""End-to-end walkthrough on the shipped sample data.

Anonymizes a raw snippet, validates the store, ingests the sample corpus,
matches the pattern pack, simulates a two-round evaluation with scripted
verdicts, and prints the resulting precision and error tables.
"""

import random
import tempfile
from pathlib import Path

import framewatch
from framewatch import evaluation as ev
from framewatch.anonymize import GazetteerDetector, RegexDetector, anonymize_text
from framewatch.corpus import build_index, ingest, stats
from framewatch.patterns import compile_patterns, match_corpus, write_matches
from framewatch.store import load_store


def main():
    print("== anonymization ==")
    text = "Paciente Maria, CPF 123.456.789-00, reside em Recife, tel (81) 98888-7766."
    detectors = [RegexDetector(detector_id="regex-a"), RegexDetector(detector_id="regex-b"),
                 GazetteerDetector(["Recife"], detector_id="venues")]
    redacted, audit = anonymize_text(text, detectors)
    print(f"in : {text}\nout: {redacted}")
    for entry in audit.entries:
        print(f"  [{entry.action}] {entry.start}-{entry.end} via {', '.join(entry.detector_ids)}")

    print("\n== store and corpus ==")
    store = load_store(framewatch.data_path(framewatch.DEFAULT_STORE))
    corpus, warnings = ingest(framewatch.data_path(framewatch.SAMPLE_CORPUS), store)
    st = stats(corpus)
    print(f"{len(store.frames)} frames; {st.sentence_count} sentences, "
          f"{st.set_count} sets ({st.sets_per_sentence:.2f}/sentence), {len(warnings)} warnings")

    print("\n== pattern matching ==")
    patterns, _ = compile_patterns(framewatch.data_path(framewatch.DEFAULT_PATTERNS), store)
    index = build_index(corpus)
    matches = match_corpus(corpus, index, patterns, store)
    for m in matches:
        sentence = index.sentence_by_key[(m.doc_id, m.sent_id)]
        print(f"  {m.pattern_id}: {sentence.text()!r}")

    print("\n== two-round evaluation (scripted verdicts) ==")
    workdir = Path(tempfile.mkdtemp(prefix="framewatch-demo-"))
    matches_path = workdir / "matches.jsonl"
    journal_path = workdir / "journal.jsonl"
    write_matches(matches, index, patterns, str(matches_path))
    eval_matches = ev.dedupe(ev.load_matches(str(matches_path)))
    annotators = ["ana", "bea", "caio"]
    r1 = ev.assign_round1(eval_matches, annotators, seed=1)
    ev.append_journal(str(journal_path), [b.to_record() for b in r1])

    rng = random.Random(1)
    records = []
    for batch in r1:
        for mid in batch.match_ids:
            verdict = "exact" if rng.random() < 0.5 else "non_match"
            records.append(ev.make_judgment(mid, batch.annotator_id, "r1", verdict).to_record())
    ev.append_journal(str(journal_path), records)

    journal = ev.load_journal(str(journal_path))
    r2 = ev.assign_round2(r1, journal.round_judgments("r1"), annotators, seed=2)
    ev.append_journal(str(journal_path), [b.to_record() for b in r2])
    r2_verdicts = ["gbv_other_pattern", "partial", "speculation", "not_gbv"]
    types = ["Psychological", "Witnessed", "Verbal"]
    records = []
    for i, (batch, mid) in enumerate((b, m) for b in r2 for m in b.match_ids):
        verdict = r2_verdicts[i % len(r2_verdicts)]
        vtype = types[i % len(types)] if verdict in ("gbv_other_pattern", "partial") else None
        records.append(ev.make_judgment(mid, batch.annotator_id, "r2", verdict, vtype).to_record())
    ev.append_journal(str(journal_path), records)

    journal = ev.load_journal(str(journal_path))
    for round_name in ("r1", "r2"):
        table = ev.precision_table(journal, eval_matches, round_name)
        print(f"\n-- precision, round {round_name[-1]} --")
        print(table.to_text(), end="")
    print("\n-- error analysis --")
    print(ev.error_distribution(journal.judgments.values()).to_text(), end="")
    print(f"\njournal: {journal_path}")


if __name__ == "__main__":
    main()
