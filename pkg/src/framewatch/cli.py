"""Command-line interface: framewatch <subcommand>."""

from __future__ import annotations

import json
import sys

import click

from . import DEFAULT_PATTERNS, DEFAULT_STORE, data_path
from . import anonymize as anon
from . import corpus as corpus_mod
from . import evaluation as ev
from . import keyness as keyness_mod
from . import patterns as patterns_mod
from .corpus import CorpusError
from .oracle import oracle_match_corpus
from .patterns import PatternCompileError
from .store import StoreParseError, StoreValidationError, load_store, parse_store, validate


def _load_store_or_fail(path):
    try:
        return load_store(path)
    except (StoreParseError, StoreValidationError) as exc:
        raise click.ClickException(f"frame store {path}: {exc}")


def _ingest_or_fail(path, store):
    try:
        return corpus_mod.ingest(path, store)
    except CorpusError as exc:
        raise click.ClickException(f"corpus {path}: {exc}")


@click.group()
def main():
    """Frame-semantic pattern surveillance engine."""


@main.command("validate-store")
@click.argument("path", type=click.Path(exists=True))
def validate_store_cmd(path):
    """Validate a frame-store file; nonzero exit and a violation list on failure."""
    try:
        store = parse_store(path)
    except StoreParseError as exc:
        raise click.ClickException(str(exc))
    violations = validate(store)
    if violations:
        for v in violations:
            click.echo(f"{v.kind}: {v.message}")
        sys.exit(1)
    click.echo(
        f"ok: {len(store.frames)} frames, {len(store.frame_elements)} frame elements, "
        f"{len(store.relations)} relations, {len(store.lexical_units)} lexical units, "
        f"{len(store.qualia)} qualia relations"
    )


@main.command("ingest")
@click.argument("path", type=click.Path(exists=True))
@click.option("--store", "store_path", default=None, help="Frame store (defaults to the shipped fixture store).")
def ingest_cmd(path, store_path):
    """Ingest a corpus file, print stats and warnings."""
    store = _load_store_or_fail(store_path or data_path(DEFAULT_STORE))
    corpus, warnings = _ingest_or_fail(path, store)
    for w in warnings:
        click.echo(f"warning [{w.kind}] {w.message}", err=True)
    st = corpus_mod.stats(corpus)
    click.echo(
        f"sentences: {st.sentence_count}\nannotation sets: {st.set_count}\n"
        f"sets per sentence: {st.sets_per_sentence:.2f}\nwords: {st.word_count}\n"
        f"warnings: {len(warnings)}"
    )


def _build_detectors(config: dict) -> list:
    detectors: list = [anon.RegexDetector(patterns=config.get("extra_regexes") or None)]
    if config.get("gazetteer_file"):
        detectors.append(anon.GazetteerDetector.from_file(config["gazetteer_file"]))
    if config.get("common_words_file") and config.get("known_names_file"):
        detectors.append(
            anon.NameFrequencyDetector.from_files(config["common_words_file"], config["known_names_file"])
        )
    return detectors


@main.command("anonymize")
@click.argument("infile", type=click.Path(exists=True))
@click.option("--policy", "policy_path", type=click.Path(exists=True), default=None, help="Policy JSON.")
@click.option("--audit", "audit_path", required=True, type=click.Path(), help="Audit JSONL output.")
@click.option("-o", "--output", "out_path", default="-", help="Redacted JSONL output (default stdout).")
def anonymize_cmd(infile, policy_path, audit_path, out_path):
    """Run the detector ensemble with span voting over a JSONL file of texts."""
    config = {}
    if policy_path:
        with open(policy_path, encoding="utf-8") as fh:
            config = json.load(fh)
    policy = anon.RedactionPolicy(
        min_agreeing_detectors=config.get("min_agreeing_detectors", 2),
        merge_overlaps=config.get("merge_overlaps", True),
        replacement_token=config.get("replacement_token", "[REDACTED]"),
    )
    detectors = _build_detectors(config)

    out = sys.stdout if out_path == "-" else open(out_path, "w", encoding="utf-8")
    try:
        with open(infile, encoding="utf-8") as fh, open(audit_path, "w", encoding="utf-8") as audit_fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                redacted, audit = anon.anonymize_text(record["text"], detectors, policy)
                record["text"] = redacted
                out.write(json.dumps(record, ensure_ascii=False) + "\n")
                audit_fh.write(
                    json.dumps(
                        {"line": line_no, "id": record.get("id"), "entries": [e.to_record() for e in audit.entries]},
                        ensure_ascii=False,
                    )
                    + "\n"
                )
    finally:
        if out is not sys.stdout:
            out.close()


@main.command("keyness")
@click.option("--focus", required=True, type=click.Path(exists=True))
@click.option("--reference", required=True, type=click.Path(exists=True))
@click.option("-k", "top_k", default=2000, show_default=True, help="Candidates to keep.")
@click.option("-N", "--smoothing", "smoothing", default=1.0, show_default=True, help="Smoothing constant.")
@click.option("-n", "--max-n", default=3, show_default=True, help="Longest n-gram.")
@click.option("-o", "--output", "out_path", default="-")
def keyness_cmd(focus, reference, top_k, smoothing, max_n, out_path):
    """Rank focus-corpus terms against a reference corpus."""
    focus_corpus, _ = _ingest_or_fail(focus, None)
    ref_corpus, _ = _ingest_or_fail(reference, None)
    result = keyness_mod.keyness_scores(
        keyness_mod.count_terms(focus_corpus, max_n),
        keyness_mod.count_terms(ref_corpus, max_n),
        smoothing,
    )
    tsv = keyness_mod.to_tsv(result, top_k)
    if out_path == "-":
        click.echo(tsv, nl=False)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(tsv)


@main.command("match")
@click.option("--store", "store_path", default=None)
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--patterns", "patterns_path", default=None, help="Pattern pack (defaults to the shipped pack).")
@click.option("-o", "--output", "out_path", required=True, type=click.Path())
@click.option("--oracle", is_flag=True, help="Use the brute-force reference matcher.")
@click.option("--overlap", type=click.Choice(["contain", "any"]), default="contain", show_default=True)
@click.option("--min-matches", default=None, type=int, help="Apply the retention filter at this threshold.")
@click.option("--workers", default=1, show_default=True)
def match_cmd(store_path, corpus_path, patterns_path, out_path, oracle, overlap, min_matches, workers):
    """Match a pattern pack against a corpus and write matches.jsonl."""
    store = _load_store_or_fail(store_path or data_path(DEFAULT_STORE))
    corpus, warnings = _ingest_or_fail(corpus_path, store)
    for w in warnings:
        click.echo(f"warning [{w.kind}] {w.message}", err=True)
    try:
        patterns, pattern_warnings = patterns_mod.compile_patterns(
            patterns_path or data_path(DEFAULT_PATTERNS), store
        )
    except PatternCompileError as exc:
        raise click.ClickException(str(exc))
    for w in pattern_warnings:
        click.echo(f"warning {w}", err=True)
    index = corpus_mod.build_index(corpus)
    if oracle:
        matches = oracle_match_corpus(corpus, patterns, overlap)
    else:
        matches = patterns_mod.match_corpus(corpus, index, patterns, store, overlap, workers)

    counts = {p.id: 0 for p in patterns}
    for m in matches:
        counts[m.pattern_id] += 1
    if min_matches is not None:
        kept, discarded = patterns_mod.retention_filter(counts, min_matches)
        for pattern_id in discarded:
            click.echo(f"discarded {pattern_id}: {counts[pattern_id]} matches < {min_matches}", err=True)
        keep = set(kept)
        matches = [m for m in matches if m.pattern_id in keep]
    patterns_mod.write_matches(matches, index, patterns, out_path)
    click.echo(f"{len(matches)} matches -> {out_path}")
    for pattern_id in sorted(counts):
        click.echo(f"  {pattern_id}: {counts[pattern_id]}")


@main.group("eval")
def eval_group():
    """Two-round human evaluation workflow."""


@eval_group.command("assign")
@click.option("--journal", "journal_path", required=True, type=click.Path())
@click.option("--matches", "matches_path", required=True, type=click.Path(exists=True))
@click.option("--round", "round_no", type=click.Choice(["1", "2"]), required=True)
@click.option("--annotators", required=True, help="Comma-separated annotator ids.")
@click.option("--seed", default=0, show_default=True)
@click.option("--no-dedupe", is_flag=True, help="Skip duplicate-sentence removal (round 1 only).")
def eval_assign_cmd(journal_path, matches_path, round_no, annotators, seed, no_dedupe):
    """Create batches for a round and append them to the journal."""
    annotator_ids = [a.strip() for a in annotators.split(",") if a.strip()]
    matches = ev.load_matches(matches_path)
    journal = ev.load_journal(journal_path)
    if round_no == "1":
        if not no_dedupe:
            before = len(matches)
            matches = ev.dedupe(matches)
            click.echo(f"dedupe: {before} -> {len(matches)}")
        batches = ev.assign_round1(matches, annotator_ids, seed)
    else:
        r1_batches = journal.batches.get("r1")
        if not r1_batches:
            raise click.ClickException("round 1 has not been assigned in this journal")
        batches = ev.assign_round2(r1_batches, journal.round_judgments("r1"), annotator_ids, seed)
    ev.append_journal(journal_path, [b.to_record() for b in batches])
    for b in batches:
        click.echo(f"{b.round} {b.annotator_id}: {len(b.match_ids)} fragments")


@eval_group.command("table")
@click.option("--journal", "journal_path", required=True, type=click.Path(exists=True))
@click.option("--matches", "matches_path", required=True, type=click.Path(exists=True))
@click.option("--round", "round_no", type=click.Choice(["1", "2"]), default="1", show_default=True)
@click.option("--partial", is_flag=True, help="Allow unjudged matches; compute over the judged subset.")
@click.option("--text-layout", is_flag=True, help="Aligned text table instead of TSV.")
@click.option("-o", "--output", "out_path", default="-")
def eval_table_cmd(journal_path, matches_path, round_no, partial, text_layout, out_path):
    """Per-pattern precision table (TSV, or the aligned text layout)."""
    journal = ev.load_journal(journal_path)
    matches = ev.assigned_universe(journal, ev.load_matches(matches_path))
    table = ev.precision_table(journal, matches, f"r{round_no}", strict=not partial)
    if table.incomplete:
        click.echo("note: table is incomplete (unjudged matches were skipped)", err=True)
    rendered = table.to_text() if text_layout else table.to_tsv()
    if out_path == "-":
        click.echo(rendered, nl=False)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)


@eval_group.command("errors")
@click.option("--journal", "journal_path", required=True, type=click.Path(exists=True))
@click.option("--top", "top_k", default=6, show_default=True, help="Types keeping their own row.")
@click.option("--text-layout", is_flag=True)
@click.option("-o", "--output", "out_path", default="-")
def eval_errors_cmd(journal_path, top_k, text_layout, out_path):
    """Violence-type distribution over the round-2 error analysis."""
    journal = ev.load_journal(journal_path)
    table = ev.error_distribution(journal.judgments.values(), top_k)
    rendered = table.to_text() if text_layout else table.to_tsv()
    if out_path == "-":
        click.echo(rendered, nl=False)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)


@main.command("serve")
@click.option("--journal", "journal_path", required=True, type=click.Path())
@click.option("--matches", "matches_path", required=True, type=click.Path(exists=True))
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_path", default=None)
@click.option("--patterns", "patterns_path", default=None)
@click.option("--tokens", "tokens_path", required=True, type=click.Path(exists=True))
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static", "static_dir", default=None, help="Directory of built UI assets to serve at /.")
def serve_cmd(journal_path, matches_path, corpus_path, store_path, patterns_path, tokens_path, port, host, static_dir):
    """Serve the review API (and the review UI when assets are provided)."""
    import uvicorn

    from .service import build_app

    app = build_app(
        journal_path=journal_path,
        matches_path=matches_path,
        corpus_path=corpus_path,
        store_path=store_path or data_path(DEFAULT_STORE),
        patterns_path=patterns_path or data_path(DEFAULT_PATTERNS),
        tokens_path=tokens_path,
        static_dir=static_dir,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
