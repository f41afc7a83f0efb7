"""Two-round human evaluation: dedup, batching, precision and error tables.

Round 1 asks whether a matched fragment is an exact instance of its pattern.
Round 2 re-examines the round-1 non-matches with fresh eyes (an annotator
never sees a fragment they judged in round 1) and types the violence found.
All judgment state lives in a single append-only JSON Lines journal; tables
are pure functions over a journal snapshot.
"""

from __future__ import annotations

import json
import random
import re
import time
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Optional, Sequence

R1_VERDICTS = frozenset({"exact", "non_match"})
R2_VERDICTS = frozenset({"gbv_other_pattern", "partial", "speculation", "not_gbv"})
ROUNDS = ("r1", "r2")

# Round-2 verdicts that still count as a correctly surfaced report (the
# pattern label was wrong but the fragment is one).
DEFAULT_R2_CORRECT = frozenset({"gbv_other_pattern", "partial"})


class EvalError(Exception):
    pass


class UnjudgedError(EvalError):
    def __init__(self, match_ids: Sequence[str], round_name: str):
        self.match_ids = list(match_ids)
        self.round_name = round_name
        shown = ", ".join(self.match_ids[:10])
        more = f" (+{len(self.match_ids) - 10} more)" if len(self.match_ids) > 10 else ""
        super().__init__(f"{len(self.match_ids)} match(es) lack a {round_name} judgment: {shown}{more}")


class AssignmentError(EvalError):
    pass


@dataclass(frozen=True)
class EvalMatch:
    """One pattern match as shipped to evaluation (self-contained record)."""

    match_id: str
    pattern_id: str
    pattern_name: str
    doc_id: str
    sent_id: str
    text: str
    anchor_set: str = ""
    anchor_frame: str = ""
    target: tuple[int, int] = (0, 0)
    bindings: tuple = ()

    @classmethod
    def from_record(cls, record: dict) -> "EvalMatch":
        return cls(
            match_id=record["match_id"],
            pattern_id=record["pattern_id"],
            pattern_name=record.get("pattern_name", record["pattern_id"]),
            doc_id=record["doc_id"],
            sent_id=record["sent_id"],
            text=record.get("text", ""),
            anchor_set=record.get("anchor_set", ""),
            anchor_frame=record.get("anchor_frame", ""),
            target=tuple(record.get("target", (0, 0))),
            bindings=tuple(
                (b["role"], tuple(b["span"]), b["filler_set"]) for b in record.get("bindings", [])
            ),
        )


def load_matches(path: str) -> list[EvalMatch]:
    matches = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                matches.append(EvalMatch.from_record(json.loads(line)))
    return matches


@dataclass(frozen=True)
class Judgment:
    match_id: str
    annotator_id: str
    round: str  # "r1" | "r2"
    verdict: str
    violence_type: Optional[str] = None
    timestamp: float = 0.0

    def validate(self) -> None:
        if self.round not in ROUNDS:
            raise EvalError(f"unknown round {self.round!r}")
        allowed = R1_VERDICTS if self.round == "r1" else R2_VERDICTS
        if self.verdict not in allowed:
            raise EvalError(f"verdict {self.verdict!r} invalid for round {self.round}")

    def key(self) -> tuple[str, str, str]:
        return (self.match_id, self.annotator_id, self.round)

    def to_record(self) -> dict:
        record = {
            "kind": "judgment",
            "match_id": self.match_id,
            "annotator_id": self.annotator_id,
            "round": self.round,
            "verdict": self.verdict,
            "timestamp": self.timestamp,
        }
        if self.violence_type is not None:
            record["violence_type"] = self.violence_type
        return record


@dataclass(frozen=True)
class Batch:
    annotator_id: str
    round: str
    match_ids: tuple[str, ...]

    def to_record(self) -> dict:
        return {
            "kind": "assignment",
            "annotator_id": self.annotator_id,
            "round": self.round,
            "match_ids": list(self.match_ids),
        }


# -- dedupe and batching ---------------------------------------------------------

_WS_RE = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def dedupe(matches: Sequence[EvalMatch]) -> list[EvalMatch]:
    """One match per distinct sentence text; keeper is the smallest
    (doc_id, sent_id, pattern_id, match_id)."""
    keeper: dict[str, EvalMatch] = {}
    for match in matches:
        text = normalize_text(match.text)
        current = keeper.get(text)
        key = (match.doc_id, match.sent_id, match.pattern_id, match.match_id)
        if current is None or key < (current.doc_id, current.sent_id, current.pattern_id, current.match_id):
            keeper[text] = match
    kept_ids = {m.match_id for m in keeper.values()}
    return [m for m in matches if m.match_id in kept_ids]


def assign_round1(
    matches: Sequence[EvalMatch], annotators: Sequence[str], seed: int = 0, overlap_fraction: float = 0.0
) -> list[Batch]:
    """Seeded shuffle, then a near-equal split (sizes differ by at most 1).

    overlap_fraction > 0 additionally hands that share of the matches to a
    second annotator for agreement studies; at the default 0 the batches are
    a strict partition.
    """
    if not annotators:
        raise AssignmentError("at least one annotator required")
    if not matches:
        raise AssignmentError("no matches to assign")
    if not 0.0 <= overlap_fraction <= 1.0:
        raise AssignmentError("overlap_fraction must be within [0, 1]")
    rng = random.Random(seed)
    ids = [m.match_id for m in matches]
    rng.shuffle(ids)
    n = len(annotators)
    base, extra = divmod(len(ids), n)
    assigned: list[list[str]] = []
    cursor = 0
    for i in range(n):
        size = base + (1 if i < extra else 0)
        assigned.append(ids[cursor : cursor + size])
        cursor += size

    if overlap_fraction > 0 and n > 1:
        n_overlap = int(round(overlap_fraction * len(ids)))
        for match_id in rng.sample(ids, n_overlap):
            holder = next(i for i, batch in enumerate(assigned) if match_id in batch)
            second = rng.choice([i for i in range(n) if i != holder])
            assigned[second].append(match_id)

    return [
        Batch(annotator_id=annotator, round="r1", match_ids=tuple(batch))
        for annotator, batch in zip(annotators, assigned)
    ]


def assign_round2(
    round1_batches: Sequence[Batch],
    r1_judgments: Iterable[Judgment],
    annotators: Sequence[str],
    seed: int = 0,
) -> list[Batch]:
    """Distribute the round-1 non-matches so nobody re-sees their own items.

    Greedy least-loaded assignment, processing the matches of the most
    constrained round-1 holders first; guaranteed collision-free, and
    near-equal whenever the exclusion structure allows it.
    """
    holder_sets: dict[str, set[str]] = {}
    for batch in round1_batches:
        for match_id in batch.match_ids:
            holder_sets.setdefault(match_id, set()).add(batch.annotator_id)
    r1_holders = {mid: frozenset(holders) for mid, holders in holder_sets.items()}

    non_match_ids = sorted(
        {j.match_id for j in r1_judgments if j.round == "r1" and j.verdict == "non_match"}
    )
    if not non_match_ids:
        return [Batch(annotator_id=a, round="r2", match_ids=()) for a in annotators]
    if len(annotators) < 2:
        raise AssignmentError("round 2 needs at least two annotators so fragments can change hands")

    rng = random.Random(seed)
    groups: dict[frozenset[str], list[str]] = {}
    for match_id in non_match_ids:
        groups.setdefault(r1_holders.get(match_id, frozenset()), []).append(match_id)
    for ids in groups.values():
        rng.shuffle(ids)

    load = {a: 0 for a in annotators}
    assigned: dict[str, list[str]] = {a: [] for a in annotators}
    # Hardest exclusions first keeps the final loads balanced.
    for holders in sorted(groups, key=lambda h: (-len(groups[h]), sorted(h))):
        for match_id in groups[holders]:
            allowed = [a for a in annotators if a not in holders]
            if not allowed:
                raise AssignmentError(
                    f"match {match_id} was seen by every annotator in round 1; the shuffle is unsatisfiable"
                )
            chosen = min(allowed, key=lambda a: (load[a], a))
            load[chosen] += 1
            assigned[chosen].append(match_id)
    return [Batch(annotator_id=a, round="r2", match_ids=tuple(assigned[a])) for a in annotators]


# -- journal ----------------------------------------------------------------------


@dataclass
class Journal:
    """Snapshot of the append-only journal: effective judgments plus batches.

    Judgments are upserted by (match_id, annotator_id, round); the file keeps
    the full history as the audit trail.
    """

    judgments: dict[tuple[str, str, str], Judgment] = field(default_factory=dict)
    batches: dict[str, list[Batch]] = field(default_factory=dict)  # round -> batches

    def upsert(self, judgment: Judgment) -> bool:
        """Apply a judgment; returns False when it is an identical no-op."""
        judgment.validate()
        existing = self.judgments.get(judgment.key())
        if existing is not None and (existing.verdict, existing.violence_type) == (
            judgment.verdict,
            judgment.violence_type,
        ):
            return False
        self.judgments[judgment.key()] = judgment
        return True

    def add_batches(self, batches: Sequence[Batch]) -> None:
        for batch in batches:
            self.batches.setdefault(batch.round, []).append(batch)

    def round_judgments(self, round_name: str) -> list[Judgment]:
        return [j for j in self.judgments.values() if j.round == round_name]

    def per_match(self, round_name: str) -> dict[str, Judgment]:
        """One judgment per match for a round. With overlapping assignments
        several annotators may have judged the same match; the smallest
        annotator id wins so the choice is order-independent."""
        chosen: dict[str, Judgment] = {}
        for j in self.judgments.values():
            if j.round != round_name:
                continue
            current = chosen.get(j.match_id)
            if current is None or j.annotator_id < current.annotator_id:
                chosen[j.match_id] = j
        return chosen

    def batch_for(self, annotator_id: str, round_name: str) -> Optional[Batch]:
        for batch in self.batches.get(round_name, []):
            if batch.annotator_id == annotator_id:
                return batch
        return None


def load_journal(path: str) -> Journal:
    journal = Journal()
    try:
        fh = open(path, encoding="utf-8")
    except FileNotFoundError:
        return journal
    with fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            kind = record.get("kind", "judgment")
            if kind == "judgment":
                journal.upsert(
                    Judgment(
                        match_id=record["match_id"],
                        annotator_id=record["annotator_id"],
                        round=record["round"],
                        verdict=record["verdict"],
                        violence_type=record.get("violence_type"),
                        timestamp=record.get("timestamp", 0.0),
                    )
                )
            elif kind == "assignment":
                journal.add_batches(
                    [
                        Batch(
                            annotator_id=record["annotator_id"],
                            round=record["round"],
                            match_ids=tuple(record["match_ids"]),
                        )
                    ]
                )
            else:
                raise EvalError(f"journal line {line_no}: unknown record kind {kind!r}")
    return journal


def append_journal(path: str, records: Iterable[dict]) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def make_judgment(
    match_id: str, annotator_id: str, round_name: str, verdict: str, violence_type: Optional[str] = None
) -> Judgment:
    return Judgment(
        match_id=match_id,
        annotator_id=annotator_id,
        round=round_name,
        verdict=verdict,
        violence_type=violence_type,
        timestamp=time.time(),
    )


# -- precision tables ---------------------------------------------------------------


@dataclass(frozen=True)
class PrecisionRow:
    pattern: str
    correct: int
    error: int

    @property
    def precision(self) -> Decimal:
        return round_ratio(self.correct, self.correct + self.error)

    def precision_text(self) -> str:
        # The degenerate all-empty overall row renders as "-" instead of failing.
        return str(self.precision) if self.correct + self.error > 0 else "-"


@dataclass
class PrecisionTable:
    rows: list[PrecisionRow]
    overall: PrecisionRow
    incomplete: bool = False

    def to_tsv(self) -> str:
        lines = ["pattern\tcorrect\terror\tprecision"]
        for row in self.rows:
            lines.append(f"{row.pattern}\t{row.correct}\t{row.error}\t{row.precision_text()}")
        lines.append(f"Overall\t{self.overall.correct}\t{self.overall.error}\t{self.overall.precision_text()}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Aligned plain-text layout mirroring the published tables."""
        header = ("Pattern", "Correct", "Error", "Precision")
        body = [(r.pattern, str(r.correct), str(r.error), r.precision_text()) for r in self.rows]
        body.append(("Overall", str(self.overall.correct), str(self.overall.error), self.overall.precision_text()))
        width = max(len(row[0]) for row in body + [header])
        lines = [f"{header[0]:<{width}} | {header[1]:>7} | {header[2]:>7} | {header[3]:>9}"]
        lines.append("-" * len(lines[0]))
        for name, correct, error, precision in body:
            lines.append(f"{name:<{width}} | {correct:>7} | {error:>7} | {precision:>9}")
        return "\n".join(lines) + "\n"


def round_ratio(numerator: int, denominator: int) -> Decimal:
    """correct/(correct+error) rounded half-up to 3 decimals, computed exactly."""
    if denominator <= 0:
        raise EvalError("precision needs a positive denominator")
    return (Decimal(numerator) / Decimal(denominator)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP)


def round_percentage(count: int, total: int) -> Decimal:
    if total <= 0:
        raise EvalError("percentage needs a positive total")
    return (Decimal(count) * 100 / Decimal(total)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


def table_from_counts(counts: Sequence[tuple[str, int, int]]) -> PrecisionTable:
    """Assemble a table from per-pattern (name, correct, error) counts; the
    overall row sums them. Shared by the journal pipeline and reproductions."""
    rows = [PrecisionRow(pattern=name, correct=c, error=e) for name, c, e in counts]
    overall = PrecisionRow(
        pattern="Overall", correct=sum(r.correct for r in rows), error=sum(r.error for r in rows)
    )
    return PrecisionTable(rows=rows, overall=overall)


def precision_table(
    journal: Journal,
    matches: Sequence[EvalMatch],
    round_name: str,
    r2_correct_verdicts: frozenset[str] = DEFAULT_R2_CORRECT,
    strict: bool = True,
) -> PrecisionTable:
    """Per-pattern precision for round 1, or for round 2 where a round-1
    exact plus a GBV-positive round-2 verdict both count as correct.

    strict=True raises on unjudged matches; strict=False computes over the
    judged subset and flags the table incomplete.
    """
    universe = {m.match_id: m for m in matches}
    r1 = journal.per_match("r1")
    r2 = journal.per_match("r2")

    missing_r1 = sorted(set(universe) - set(r1))
    incomplete = bool(missing_r1)
    if round_name == "r2":
        needs_r2 = {mid for mid, j in r1.items() if mid in universe and j.verdict == "non_match"}
        missing_r2 = sorted(needs_r2 - set(r2))
        incomplete = incomplete or bool(missing_r2)
    if strict and incomplete:
        if missing_r1:
            raise UnjudgedError(missing_r1, "round-1")
        raise UnjudgedError(missing_r2, "round-2")

    counts: dict[str, list[int]] = {}
    for match_id, match in sorted(universe.items()):
        j1 = r1.get(match_id)
        if j1 is None:
            continue
        bucket = counts.setdefault(match.pattern_name, [0, 0])
        if round_name == "r1":
            bucket[0 if j1.verdict == "exact" else 1] += 1
        else:
            if j1.verdict == "exact":
                bucket[0] += 1
            else:
                j2 = r2.get(match_id)
                if j2 is None:
                    continue  # unjudged in round 2; reachable only in non-strict mode
                bucket[0 if j2.verdict in r2_correct_verdicts else 1] += 1

    ordered = [(name, c, e) for name, (c, e) in sorted(counts.items()) if c + e > 0]
    table = table_from_counts(ordered) if ordered else PrecisionTable(rows=[], overall=PrecisionRow("Overall", 0, 0))
    table.incomplete = incomplete
    return table


def assigned_universe(journal: Journal, matches: Sequence[EvalMatch]) -> list[EvalMatch]:
    """Restrict the match universe to what round 1 actually assigned (falls
    back to all matches when no round-1 batches exist yet)."""
    assigned: set[str] = set()
    for batch in journal.batches.get("r1", []):
        assigned.update(batch.match_ids)
    if not assigned:
        return list(matches)
    return [m for m in matches if m.match_id in assigned]


# -- error distribution ----------------------------------------------------------------


@dataclass(frozen=True)
class ErrorRow:
    violence_type: str
    count: int
    percentage: Decimal


@dataclass
class ErrorTable:
    rows: list[ErrorRow]
    total: int

    def to_tsv(self) -> str:
        lines = ["violence_type\tcount\tpercentage"]
        for row in self.rows:
            lines.append(f"{row.violence_type}\t{row.count}\t{row.percentage}")
        lines.append(f"TOTAL\t{self.total}\t100.0")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        header = ("Violence type", "Count", "Percentage")
        body = [(r.violence_type, str(r.count), f"{r.percentage}%") for r in self.rows]
        body.append(("TOTAL", str(self.total), "100%"))
        width = max(len(row[0]) for row in body + [header])
        lines = [f"{header[0]:<{width}} | {header[1]:>6} | {header[2]:>10}"]
        lines.append("-" * len(lines[0]))
        for name, count, pct in body:
            lines.append(f"{name:<{width}} | {count:>6} | {pct:>10}")
        return "\n".join(lines) + "\n"


def error_distribution(judgments: Iterable[Judgment], top_k: int = 6) -> ErrorTable:
    """Violence-type distribution over round-2 judgments that carry a type.

    The top_k most frequent types keep their own rows (ties broken
    alphabetically); everything else collapses into "Other", listed last.
    """
    counts: dict[str, int] = {}
    for j in judgments:
        if j.round == "r2" and j.violence_type:
            name = j.violence_type.strip()
            if name:
                counts[name] = counts.get(name, 0) + 1
    total = sum(counts.values())
    if total == 0:
        return ErrorTable(rows=[], total=0)

    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    head = ranked[:top_k]
    other = sum(count for _, count in ranked[top_k:])
    rows = [ErrorRow(name, count, round_percentage(count, total)) for name, count in head]
    if other:
        rows.append(ErrorRow("Other", other, round_percentage(other, total)))
    return ErrorTable(rows=rows, total=total)
