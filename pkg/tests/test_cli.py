import json

import pytest
from click.testing import CliRunner

import framewatch
from framewatch.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_validate_store_ok(runner):
    result = runner.invoke(main, ["validate-store", framewatch.data_path(framewatch.DEFAULT_STORE)])
    assert result.exit_code == 0
    assert "ok:" in result.output


def test_validate_store_failure_exits_nonzero(runner, tmp_path):
    path = tmp_path / "bad.jsonl"
    records = [
        {"kind": "frame", "name": "A", "definition": "x"},
        {"kind": "frame_relation", "type": "inheritance", "source": "A", "target": "Missing"},
    ]
    path.write_text("\n".join(json.dumps(r) for r in records), encoding="utf-8")
    result = runner.invoke(main, ["validate-store", str(path)])
    assert result.exit_code == 1
    assert "dangling_reference" in result.output


def test_ingest_prints_stats(runner):
    result = runner.invoke(main, ["ingest", framewatch.data_path(framewatch.SAMPLE_CORPUS)])
    assert result.exit_code == 0, result.output
    assert "sentences: 6" in result.output
    assert "sets per sentence: 3.50" in result.output


def test_match_and_eval_workflow(runner, tmp_path):
    matches_path = tmp_path / "matches.jsonl"
    result = runner.invoke(
        main,
        ["match", "--corpus", framewatch.data_path(framewatch.SAMPLE_CORPUS), "-o", str(matches_path)],
    )
    assert result.exit_code == 0, result.output
    assert "4 matches" in result.output

    journal_path = tmp_path / "journal.jsonl"
    result = runner.invoke(
        main,
        ["eval", "assign", "--journal", str(journal_path), "--matches", str(matches_path),
         "--round", "1", "--annotators", "a,b", "--seed", "7"],
    )
    assert result.exit_code == 0, result.output

    # Judge everything exact via the journal file, then table.
    from framewatch import evaluation as ev

    journal = ev.load_journal(str(journal_path))
    records = []
    for batch in journal.batches["r1"]:
        for mid in batch.match_ids:
            records.append(ev.Judgment(mid, batch.annotator_id, "r1", "exact", timestamp=1.0).to_record())
    ev.append_journal(str(journal_path), records)

    result = runner.invoke(
        main,
        ["eval", "table", "--journal", str(journal_path), "--matches", str(matches_path), "--round", "1"],
    )
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[-1].startswith("Overall\t4\t0\t1.000")


def test_match_with_retention_filter(runner, tmp_path):
    matches_path = tmp_path / "matches.jsonl"
    result = runner.invoke(
        main,
        ["match", "--corpus", framewatch.data_path(framewatch.SAMPLE_CORPUS), "-o", str(matches_path),
         "--min-matches", "30"],
    )
    assert result.exit_code == 0, result.output
    # Desk-scale sample corpus: every pattern sits under the paper threshold.
    assert "0 matches" in result.output


def test_match_oracle_flag_agrees(runner, tmp_path):
    fast_path = tmp_path / "fast.jsonl"
    slow_path = tmp_path / "slow.jsonl"
    corpus = framewatch.data_path(framewatch.SAMPLE_CORPUS)
    assert runner.invoke(main, ["match", "--corpus", corpus, "-o", str(fast_path)]).exit_code == 0
    assert runner.invoke(main, ["match", "--corpus", corpus, "-o", str(slow_path), "--oracle"]).exit_code == 0
    assert fast_path.read_text(encoding="utf-8") == slow_path.read_text(encoding="utf-8")


def test_keyness_command(runner, tmp_path):
    def write_corpus(name, sentences):
        path = tmp_path / name
        lines = []
        for i, words in enumerate(sentences):
            tokens = []
            offset = 0
            for w in words:
                tokens.append({"surface": w, "lemma": w, "pos": "n", "start": offset, "end": offset + len(w)})
                offset += len(w) + 1
            lines.append(json.dumps({"doc_id": "d", "sent_id": f"s{i}", "field_tag": "S",
                                     "tokens": tokens, "sets": []}))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    focus = write_corpus("focus.jsonl", [["soco", "forte"], ["soco", "casa"]])
    reference = write_corpus("ref.jsonl", [["casa", "verde"], ["casa", "azul"]])
    out = tmp_path / "terms.tsv"
    result = runner.invoke(
        main, ["keyness", "--focus", focus, "--reference", reference, "-k", "5", "-N", "1.0", "-o", str(out)]
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "term\tscore\tfpm_focus\tfpm_ref"
    assert lines[1].startswith("soco\t")


def test_anonymize_command(runner, tmp_path):
    infile = tmp_path / "texts.jsonl"
    infile.write_text(
        json.dumps({"id": 1, "text": "contato (81) 99999-1234 CPF 123.456.789-00"}) + "\n", encoding="utf-8"
    )
    policy = tmp_path / "policy.json"
    # Two regex detector instances under distinct ids stand in for a second technique.
    policy.write_text(json.dumps({"min_agreeing_detectors": 1}), encoding="utf-8")
    audit = tmp_path / "audit.jsonl"
    out = tmp_path / "out.jsonl"
    result = runner.invoke(
        main, ["anonymize", str(infile), "--policy", str(policy), "--audit", str(audit), "-o", str(out)]
    )
    assert result.exit_code == 0, result.output
    redacted = json.loads(out.read_text(encoding="utf-8"))["text"]
    assert "[REDACTED]" in redacted and "123.456.789-00" not in redacted
    entries = json.loads(audit.read_text(encoding="utf-8"))["entries"]
    assert any(e["action"] == "redacted" for e in entries)


def test_match_worker_flag_byte_identical(runner, tmp_path):
    one = tmp_path / "w1.jsonl"
    two = tmp_path / "w2.jsonl"
    corpus = framewatch.data_path(framewatch.SAMPLE_CORPUS)
    assert runner.invoke(main, ["match", "--corpus", corpus, "-o", str(one), "--workers", "1"]).exit_code == 0
    assert runner.invoke(main, ["match", "--corpus", corpus, "-o", str(two), "--workers", "2"]).exit_code == 0
    assert one.read_bytes() == two.read_bytes()
