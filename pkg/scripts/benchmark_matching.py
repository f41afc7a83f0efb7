#!/usr/bin/env python3
"""Matching throughput experiment.

Synthesizes an annotated corpus, runs the Table-1 pattern subset of the
shipped pack over it single-threaded and with workers, and reports wall
times plus an output-identity check across worker counts.

Usage: python scripts/benchmark_matching.py [--sentences 100000] [--seed 31337]
"""

import argparse
import json
import time

import framewatch
from framewatch.corpus import build_index
from framewatch.patterns import compile_patterns, match_corpus, match_record
from framewatch.store import load_store
from framewatch.synth import synth_corpus


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sentences", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=31337)
    parser.add_argument("--workers", type=int, nargs="*", default=[1, 2, 4])
    args = parser.parse_args()

    store = load_store(framewatch.data_path(framewatch.DEFAULT_STORE))
    pack, _ = compile_patterns(framewatch.data_path(framewatch.DEFAULT_PATTERNS), store)
    patterns = [p for p in pack if p.scenario != "psychological_violence"]

    t0 = time.monotonic()
    corpus = synth_corpus(store, args.sentences, seed=args.seed)
    print(f"synthesized {args.sentences} sentences in {time.monotonic() - t0:.1f}s")

    t0 = time.monotonic()
    index = build_index(corpus)
    print(f"indexed in {time.monotonic() - t0:.1f}s "
          f"({sum(len(p) for p in index.frame_postings.values())} postings)")

    by_id = {p.id: p for p in patterns}
    reference = None
    for workers in args.workers:
        t0 = time.monotonic()
        matches = match_corpus(corpus, index, patterns, store, workers=workers)
        elapsed = time.monotonic() - t0
        rate = args.sentences / elapsed if elapsed else float("inf")
        print(f"workers={workers}: {len(matches)} matches in {elapsed:.1f}s ({rate:,.0f} sentences/s)")
        payload = "\n".join(
            json.dumps(match_record(m, index.sentence_by_key[(m.doc_id, m.sent_id)], by_id[m.pattern_id]),
                       sort_keys=True)
            for m in matches
        )
        if reference is None:
            reference = payload
        elif payload != reference:
            raise SystemExit("output differs across worker counts")
    print("output byte-identical across worker counts")


if __name__ == "__main__":
    main()
