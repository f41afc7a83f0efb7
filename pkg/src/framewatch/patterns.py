"""Frame-semantic patterns: DSL compilation, corpus matching, retention.

A pattern pairs an anchor frame constraint (optionally narrowed to specific
lexical units) with role constraints requiring a frame-element span to
contain the target of another annotation set evoking one of the allowed
filler frames. Matching works sentence by sentence; the indexed corpus
matcher visits only sentences that can host an anchor.
"""

from __future__ import annotations

import difflib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .corpus import AnnotationSet, Corpus, CorpusIndex, Sentence
from .store import POS_TAGS, RELATION_TYPES, FrameStore


class PatternCompileError(Exception):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"pattern line {line_no}: {message}")


@dataclass(frozen=True)
class FrameConstraint:
    frame_names: frozenset[str]
    expand: Optional[tuple[str, str]] = None  # (relation_type, direction)
    lu_whitelist: Optional[frozenset[tuple[str, str]]] = None

    def admits(self, aset: AnnotationSet) -> bool:
        if aset.frame_name not in self.frame_names:
            return False
        if self.lu_whitelist is not None:
            if aset.lu is None:
                return False
            return (aset.lu.lemma, aset.lu.pos) in self.lu_whitelist
        return True


@dataclass(frozen=True)
class RoleConstraint:
    role_name: str
    filler: FrameConstraint


@dataclass(frozen=True)
class Pattern:
    id: str
    name: str
    scenario: str
    anchor: FrameConstraint
    roles: tuple[RoleConstraint, ...] = ()
    notes: str = ""
    reconstructed: bool = False


@dataclass(frozen=True)
class Binding:
    role_name: str
    fe_span: tuple[int, int]
    filler_set_id: str


@dataclass(frozen=True)
class Match:
    pattern_id: str
    doc_id: str
    sent_id: str
    anchor_set_id: str
    bindings: tuple[Binding, ...]

    @property
    def match_id(self) -> str:
        return f"{self.pattern_id}:{self.doc_id}:{self.sent_id}:{self.anchor_set_id}"

    def sort_key(self):
        return (self.pattern_id, self.doc_id, self.sent_id, self.anchor_set_id)


# -- compilation ---------------------------------------------------------------


def _expand_frames(store: FrameStore, names: Iterable[str], expand: Optional[tuple[str, str]]) -> frozenset[str]:
    expanded = set(names)
    if expand is not None:
        relation_type, direction = expand
        for name in list(expanded):
            expanded.update(f.name for f in store.closure(name, relation_type, direction))
    return frozenset(expanded)


def _compile_constraint(raw: dict, store: FrameStore, line_no: int, what: str) -> FrameConstraint:
    names = raw.get("frames", [])
    if not names:
        raise PatternCompileError(line_no, f"{what} needs a non-empty frame list")
    for name in names:
        if not store.has_frame(name):
            hint = difflib.get_close_matches(name, list(store.frames), n=1)
            suggestion = f"; did you mean {hint[0]!r}?" if hint else ""
            raise PatternCompileError(line_no, f"{what} names unknown frame {name!r}{suggestion}")

    expand = None
    raw_expand = raw.get("expand")
    if raw_expand is not None:
        relation = raw_expand.get("relation")
        direction = raw_expand.get("direction")
        if relation not in RELATION_TYPES or direction not in ("sources", "targets"):
            raise PatternCompileError(line_no, f"{what} has a malformed expand directive")
        expand = (relation, direction)
    frame_names = _expand_frames(store, names, expand)

    whitelist = None
    if raw.get("lus"):
        pairs = []
        for entry in raw["lus"]:
            if not isinstance(entry, (list, tuple)) or len(entry) != 2 or entry[1] not in POS_TAGS:
                raise PatternCompileError(line_no, f"{what} LU entries must be [lemma, pos] pairs")
            lemma, pos = str(entry[0]), str(entry[1])
            if not any(store.get_lu(lemma, pos, f) for f in frame_names):
                raise PatternCompileError(
                    line_no, f"{what} LU {lemma}.{pos} belongs to none of the constraint frames"
                )
            pairs.append((lemma, pos))
        whitelist = frozenset(pairs)
    return FrameConstraint(frame_names=frame_names, expand=expand, lu_whitelist=whitelist)


def compile_patterns(path: str, store: FrameStore) -> tuple[list[Pattern], list[str]]:
    """Compile a JSONL pattern file against the store.

    Returns (patterns, warnings); raises PatternCompileError on unknown
    frames, malformed constraints, or roles missing from every anchor frame.
    """
    patterns: list[Pattern] = []
    warnings: list[str] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PatternCompileError(line_no, f"invalid JSON: {exc.msg}") from exc
            pattern = compile_pattern(raw, store, line_no)
            if pattern.id in seen_ids:
                raise PatternCompileError(line_no, f"duplicate pattern id {pattern.id!r}")
            seen_ids.add(pattern.id)
            for role in pattern.roles:
                missing = [f for f in pattern.anchor.frame_names if not store.has_role(f, role.role_name)]
                if len(missing) == len(pattern.anchor.frame_names):
                    raise PatternCompileError(
                        line_no,
                        f"role {role.role_name!r} exists on none of the anchor frames "
                        f"{sorted(pattern.anchor.frame_names)}",
                    )
                if missing:
                    warnings.append(
                        f"pattern {pattern.id}: role {role.role_name!r} missing on anchor frame(s) "
                        f"{sorted(missing)}"
                    )
            patterns.append(pattern)
    return patterns, warnings


def compile_pattern(raw: dict, store: FrameStore, line_no: int = 0) -> Pattern:
    for key in ("id", "name", "anchor"):
        if key not in raw:
            raise PatternCompileError(line_no, f"missing field {key!r}")
    anchor = _compile_constraint(raw["anchor"], store, line_no, "anchor")
    roles = []
    for raw_role in raw.get("roles", []):
        if "role" not in raw_role or "filler" not in raw_role:
            raise PatternCompileError(line_no, "role entries need role and filler")
        roles.append(
            RoleConstraint(
                role_name=str(raw_role["role"]),
                filler=_compile_constraint(raw_role["filler"], store, line_no, f"filler of {raw_role['role']}"),
            )
        )
    return Pattern(
        id=str(raw["id"]),
        name=str(raw["name"]),
        scenario=str(raw.get("scenario", "")),
        anchor=anchor,
        roles=tuple(roles),
        notes=str(raw.get("notes", "")),
        reconstructed=bool(raw.get("reconstructed", False)),
    )


# -- matching -------------------------------------------------------------------


def _span_admits(fe_span: tuple[int, int], target: tuple[int, int], overlap: str) -> bool:
    if overlap == "contain":
        return fe_span[0] <= target[0] and target[1] <= fe_span[1]
    return fe_span[0] < target[1] and target[0] < fe_span[1]


def _bind_role(
    anchor: AnnotationSet, role: RoleConstraint, sets: Sequence[AnnotationSet], overlap: str
) -> Optional[Binding]:
    """Witness for one role: leftmost filler by target start, then smallest
    set id, then smallest FE span."""
    candidates = []
    for role_name, fe_span in anchor.fe_spans:
        if role_name != role.role_name:
            continue
        for other in sets:
            if other.id == anchor.id or not other.known_frame:
                continue
            if not role.filler.admits(other):
                continue
            if _span_admits(fe_span, other.target, overlap):
                candidates.append((other.target[0], other.id, fe_span[0], fe_span[1], other))
    if not candidates:
        return None
    start, set_id, span_start, span_end, _ = min(candidates)
    return Binding(role_name=role.role_name, fe_span=(span_start, span_end), filler_set_id=set_id)


def match_sentence(
    sets: Sequence[AnnotationSet], pattern: Pattern, store: FrameStore, overlap: str = "contain"
) -> list[Match]:
    """All matches of one pattern within one sentence (one per anchor set)."""
    matches = []
    for anchor in sets:
        if not anchor.known_frame or not pattern.anchor.admits(anchor):
            continue
        bindings = []
        satisfied = True
        for role in pattern.roles:
            binding = _bind_role(anchor, role, sets, overlap)
            if binding is None:
                satisfied = False
                break
            bindings.append(binding)
        if satisfied:
            matches.append(
                Match(
                    pattern_id=pattern.id,
                    doc_id=anchor.doc_id,
                    sent_id=anchor.sent_id,
                    anchor_set_id=anchor.id,
                    bindings=tuple(bindings),
                )
            )
    return matches


_WORKER_STATE: dict = {}


def _match_chunk(args):
    lo, hi = args
    sentences = _WORKER_STATE["sentences"]
    patterns = _WORKER_STATE["patterns"]
    store = _WORKER_STATE["store"]
    overlap = _WORKER_STATE["overlap"]
    out = []
    for sentence in sentences[lo:hi]:
        for pattern in patterns:
            out.extend(match_sentence(sentence.sets, pattern, store, overlap))
    return out


def match_corpus(
    corpus: Corpus,
    index: CorpusIndex,
    patterns: Sequence[Pattern],
    store: FrameStore,
    overlap: str = "contain",
    workers: int = 1,
) -> list[Match]:
    """Match all patterns over the corpus, sorted by
    (pattern_id, doc_id, sent_id, anchor set id).

    The frame inverted index prunes the sentence set per pattern; with
    workers > 1 the candidate sentences are partitioned and the merged
    output is re-sorted, so the result is identical for any worker count.
    """
    candidate_keys: set[tuple[str, str]] = set()
    per_pattern_keys: dict[str, list[tuple[str, str]]] = {}
    for pattern in patterns:
        keys = index.candidate_sentences(pattern.anchor.frame_names)
        per_pattern_keys[pattern.id] = keys
        candidate_keys.update(keys)

    if workers <= 1:
        matches: list[Match] = []
        for pattern in patterns:
            for key in per_pattern_keys[pattern.id]:
                sentence = index.sentence_by_key[key]
                matches.extend(match_sentence(sentence.sets, pattern, store, overlap))
        matches.sort(key=Match.sort_key)
        return matches

    sentences = [index.sentence_by_key[k] for k in sorted(candidate_keys)]
    _WORKER_STATE.update(
        {"sentences": sentences, "patterns": list(patterns), "store": store, "overlap": overlap}
    )
    try:
        import multiprocessing

        chunk = max(1, (len(sentences) + workers - 1) // workers)
        ranges = [(lo, min(lo + chunk, len(sentences))) for lo in range(0, len(sentences), chunk)]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            results = list(pool.map(_match_chunk, ranges))
        matches = [m for part in results for m in part]
    finally:
        _WORKER_STATE.clear()
    matches.sort(key=Match.sort_key)
    return matches


# -- retention and sampling ------------------------------------------------------


def retention_filter(match_counts: dict[str, int], min_matches: int = 30) -> tuple[list[str], list[str]]:
    """Partition pattern ids into (kept, discarded); fewer matches than the
    threshold means discarded, exactly the threshold is kept."""
    kept, discarded = [], []
    for pattern_id in sorted(match_counts):
        (discarded if match_counts[pattern_id] < min_matches else kept).append(pattern_id)
    return kept, discarded


def sample_for_inspection(matches: Sequence[Match], cap: int = 100, seed: int = 0) -> list[Match]:
    """Everything when small enough, otherwise a seeded uniform sample of
    size cap, kept in stream order."""
    if len(matches) <= cap:
        return list(matches)
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(len(matches)), cap))
    return [matches[i] for i in chosen]


# -- wire format -------------------------------------------------------------------


def match_record(match: Match, sentence: Sentence, pattern: Pattern) -> dict:
    """Self-contained match record for matches.jsonl (keeps the sentence text
    so downstream evaluation never needs the corpus)."""
    anchor = next(s for s in sentence.sets if s.id == match.anchor_set_id)
    return {
        "match_id": match.match_id,
        "pattern_id": match.pattern_id,
        "pattern_name": pattern.name,
        "doc_id": match.doc_id,
        "sent_id": match.sent_id,
        "anchor_set": match.anchor_set_id,
        "anchor_frame": anchor.frame_name,
        "target": list(anchor.target),
        "text": sentence.text(),
        "bindings": [
            {"role": b.role_name, "span": list(b.fe_span), "filler_set": b.filler_set_id}
            for b in match.bindings
        ],
    }


def write_matches(
    matches: Sequence[Match], index: CorpusIndex, patterns: Sequence[Pattern], path: str
) -> None:
    by_id = {p.id: p for p in patterns}
    with open(path, "w", encoding="utf-8") as fh:
        for m in matches:
            sentence = index.sentence_by_key[(m.doc_id, m.sent_id)]
            fh.write(json.dumps(match_record(m, sentence, by_id[m.pattern_id]), ensure_ascii=False) + "\n")
