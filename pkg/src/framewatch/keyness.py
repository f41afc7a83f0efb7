"""Candidate term extraction: smoothed frequency-ratio keyness scoring.

Terms are lemma n-grams (n up to 3) that never cross sentence boundaries.
score = (fpm_focus + k) / (fpm_reference + k) with fpm = frequency per
million tokens, so a term is scored high when it is especially prominent in
the focus corpus relative to the reference corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Corpus, EmptyCorpusError

MILLION = 1_000_000.0


@dataclass
class TermCounts:
    counts: dict[str, int] = field(default_factory=dict)
    corpus_token_total: int = 0

    def frequency(self, term: str) -> int:
        return self.counts.get(term, 0)

    def fpm(self, term: str) -> float:
        return self.counts.get(term, 0) * MILLION / self.corpus_token_total


@dataclass(frozen=True)
class ScoredTerm:
    term: str
    score: float
    focus_fpm: float
    ref_fpm: float


@dataclass
class KeynessResult:
    ranked: list[ScoredTerm]

    def __iter__(self):
        return iter(self.ranked)

    def __len__(self):
        return len(self.ranked)


def count_terms(corpus: Corpus, max_n: int = 3) -> TermCounts:
    """Lemma n-gram counts, n in 1..max_n, within sentence boundaries."""
    if not 1 <= max_n <= 3:
        raise ValueError("max_n must be between 1 and 3")
    if len(corpus) == 0:
        raise EmptyCorpusError("cannot count terms of an empty corpus")
    counts: dict[str, int] = {}
    total = 0
    for sentence in corpus:
        lemmas = [t.lemma for t in sentence.tokens]
        total += len(lemmas)
        for n in range(1, max_n + 1):
            for i in range(len(lemmas) - n + 1):
                term = " ".join(lemmas[i : i + n])
                counts[term] = counts.get(term, 0) + 1
    return TermCounts(counts=counts, corpus_token_total=total)


def keyness_scores(focus: TermCounts, reference: TermCounts, smoothing: float = 1.0) -> KeynessResult:
    """Score every focus term against the reference; sorted by score, ties by term."""
    if smoothing <= 0:
        raise ValueError("smoothing must be positive")
    if not focus.counts or focus.corpus_token_total == 0:
        raise EmptyCorpusError("focus counts are empty")
    scored = []
    for term in focus.counts:
        focus_fpm = focus.fpm(term)
        ref_fpm = reference.fpm(term) if reference.corpus_token_total else 0.0
        score = (focus_fpm + smoothing) / (ref_fpm + smoothing)
        scored.append(ScoredTerm(term=term, score=score, focus_fpm=focus_fpm, ref_fpm=ref_fpm))
    scored.sort(key=lambda s: (-s.score, s.term))
    return KeynessResult(ranked=scored)


def top_candidates(result: KeynessResult, k: int = 2000) -> list[str]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return [s.term for s in result.ranked[:k]]


def to_tsv(result: KeynessResult, k: int | None = None) -> str:
    rows = result.ranked if k is None else result.ranked[:k]
    lines = ["term\tscore\tfpm_focus\tfpm_ref"]
    lines.extend(f"{s.term}\t{s.score:.6f}\t{s.focus_fpm:.4f}\t{s.ref_fpm:.4f}" for s in rows)
    return "\n".join(lines) + "\n"
