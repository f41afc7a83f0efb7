"""Pre-parsed sentence corpus: ingest, validation against a frame store, indexing.

Corpus files are JSON Lines, one sentence per line. Token and frame-element
ranges are half-open token index pairs [i, j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .store import POS_TAGS, FrameStore, LexicalUnit

FIELD_TAGS = frozenset({"S", "O", "A", "P", "other"})


class CorpusError(Exception):
    """Malformed corpus file; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class EmptyCorpusError(Exception):
    pass


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    char_start: int
    char_end: int


@dataclass(frozen=True)
class AnnotationSet:
    id: str
    doc_id: str
    sent_id: str
    target: tuple[int, int]
    frame_name: str
    lu: Optional[LexicalUnit]
    fe_spans: tuple[tuple[str, tuple[int, int]], ...]
    known_frame: bool = True


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sent_id: str
    field_tag: str
    tokens: tuple[Token, ...]
    sets: tuple[AnnotationSet, ...]

    @property
    def key(self) -> tuple[str, str]:
        return (self.doc_id, self.sent_id)

    def text(self) -> str:
        """Reconstruct the field text from token offsets (gaps become spaces)."""
        if not self.tokens:
            return ""
        length = max(t.char_end for t in self.tokens)
        chars = [" "] * length
        for tok in self.tokens:
            for i, ch in enumerate(tok.surface[: tok.char_end - tok.char_start]):
                chars[tok.char_start + i] = ch
        return "".join(chars)

    def token_span_to_chars(self, span: tuple[int, int]) -> tuple[int, int]:
        i, j = span
        return (self.tokens[i].char_start, self.tokens[j - 1].char_end)


@dataclass(frozen=True)
class Warning:
    kind: str
    message: str
    doc_id: str = ""
    sent_id: str = ""
    set_id: str = ""


@dataclass
class Corpus:
    sentences: list[Sentence] = field(default_factory=list)

    def __iter__(self):
        return iter(self.sentences)

    def __len__(self):
        return len(self.sentences)

    def sentence(self, doc_id: str, sent_id: str) -> Sentence:
        for s in self.sentences:  # pragma: no cover - convenience accessor
            if s.doc_id == doc_id and s.sent_id == sent_id:
                return s
        raise KeyError((doc_id, sent_id))


@dataclass(frozen=True)
class CorpusStats:
    sentence_count: int
    set_count: int
    sets_per_sentence: float
    word_count: int


@dataclass
class CorpusIndex:
    """Inverted indexes over an ingested corpus.

    frame_postings: frame name -> sorted (doc_id, sent_id, set_id)
    sentence_sets: (doc_id, sent_id) -> set ids in order
    lemma_postings: casefolded lemma -> sorted (doc_id, sent_id, token index)
    """

    frame_postings: dict[str, list[tuple[str, str, str]]]
    sentence_sets: dict[tuple[str, str], list[str]]
    lemma_postings: dict[str, list[tuple[str, str, int]]]
    sentence_by_key: dict[tuple[str, str], Sentence]

    def candidate_sentences(self, frame_names) -> list[tuple[str, str]]:
        keys = {
            (doc_id, sent_id)
            for name in frame_names
            for doc_id, sent_id, _ in self.frame_postings.get(name, [])
        }
        return sorted(keys)


def _span(value, n_tokens: int, line_no: int, what: str) -> tuple[int, int]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(v, int) for v in value)
    ):
        raise CorpusError(line_no, f"{what} must be a [start, end) integer pair")
    i, j = value
    if not (0 <= i < j <= n_tokens):
        raise CorpusError(line_no, f"{what} [{i}, {j}) out of bounds for {n_tokens} tokens")
    return (i, j)


def _parse_tokens(raw_tokens, line_no: int) -> tuple[Token, ...]:
    if not isinstance(raw_tokens, list) or not raw_tokens:
        raise CorpusError(line_no, "tokens must be a non-empty list")
    tokens = []
    prev_end = -1
    for raw in raw_tokens:
        try:
            tok = Token(
                surface=str(raw["surface"]),
                lemma=str(raw["lemma"]),
                pos=raw["pos"],
                char_start=int(raw["start"]),
                char_end=int(raw["end"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusError(line_no, f"bad token record: {exc}") from exc
        if tok.pos not in POS_TAGS:
            raise CorpusError(line_no, f"token pos {tok.pos!r} not one of {sorted(POS_TAGS)}")
        if tok.char_start >= tok.char_end:
            raise CorpusError(line_no, f"token offsets [{tok.char_start}, {tok.char_end}) are empty")
        if tok.char_start < prev_end:
            raise CorpusError(line_no, "token offsets overlap or are not increasing")
        prev_end = tok.char_end
        tokens.append(tok)
    return tuple(tokens)


def _infer_set_lu(store: FrameStore, tokens, target: tuple[int, int], frame_name: str):
    span_tokens = tokens[target[0] : target[1]]
    if len(span_tokens) == 1:
        lemma, pos = span_tokens[0].lemma, span_tokens[0].pos
    else:
        lemma = " ".join(t.lemma for t in span_tokens)
        pos = span_tokens[-1].pos
    lu = store.infer_lu(lemma, pos, frame_name)
    if lu is None and len(span_tokens) == 1:
        # Surface form may be an abbreviation listed among the word forms.
        lu = store.infer_lu(span_tokens[0].surface, pos, frame_name)
    return lu


def ingest(path: str, store: Optional[FrameStore] = None) -> tuple[Corpus, list[Warning]]:
    """Load a corpus file, filling LUs from the store and flagging oddities.

    Annotation sets naming frames missing from the store are kept but flagged
    (they are excluded from pattern matching downstream). Without a store, no
    frame checks or LU inference happen.
    """
    corpus = Corpus()
    warnings: list[Warning] = []
    seen_keys: set[tuple[str, str]] = set()

    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(line_no, f"invalid JSON: {exc.msg}") from exc
            sentence = _parse_sentence(record, line_no, store, warnings)
            if sentence.key in seen_keys:
                raise CorpusError(line_no, f"duplicate sentence key {sentence.key}")
            seen_keys.add(sentence.key)
            corpus.sentences.append(sentence)
    return corpus, warnings


def _parse_sentence(record: dict, line_no: int, store: Optional[FrameStore], warnings: list[Warning]) -> Sentence:
    for key in ("doc_id", "sent_id", "tokens"):
        if key not in record:
            raise CorpusError(line_no, f"missing field {key!r}")
    doc_id = str(record["doc_id"])
    sent_id = str(record["sent_id"])
    field_tag = record.get("field_tag", "other")
    if field_tag not in FIELD_TAGS:
        raise CorpusError(line_no, f"field_tag {field_tag!r} not one of {sorted(FIELD_TAGS)}")
    tokens = _parse_tokens(record["tokens"], line_no)

    sets: list[AnnotationSet] = []
    for ordinal, raw_set in enumerate(record.get("sets", [])):
        if not isinstance(raw_set, dict) or "frame" not in raw_set or "target" not in raw_set:
            raise CorpusError(line_no, "annotation set needs frame and target")
        set_id = f"{doc_id}:{sent_id}:{ordinal}"
        frame_name = str(raw_set["frame"])
        target = _span(raw_set["target"], len(tokens), line_no, "target")
        fe_spans = []
        for fe in raw_set.get("fes", []):
            if not isinstance(fe, dict) or "role" not in fe or "span" not in fe:
                raise CorpusError(line_no, "frame element entry needs role and span")
            fe_spans.append((str(fe["role"]), _span(fe["span"], len(tokens), line_no, "fe span")))

        known_frame = True
        lu: Optional[LexicalUnit] = None
        if store is not None:
            known_frame = store.has_frame(frame_name)
            if not known_frame:
                warnings.append(
                    Warning(
                        "unknown_frame",
                        f"set {set_id} names frame {frame_name!r} absent from the store",
                        doc_id,
                        sent_id,
                        set_id,
                    )
                )
            else:
                for role, _ in fe_spans:
                    if not store.has_role(frame_name, role):
                        warnings.append(
                            Warning(
                                "unknown_role",
                                f"set {set_id} labels role {role!r} missing on frame {frame_name!r}",
                                doc_id,
                                sent_id,
                                set_id,
                            )
                        )
                raw_lu = raw_set.get("lu")
                if raw_lu:
                    lemma, _, pos = str(raw_lu).rpartition(".")
                    lu = store.infer_lu(lemma, pos, frame_name) if lemma and pos in POS_TAGS else None
                    if lu is None:
                        warnings.append(
                            Warning(
                                "unknown_lu",
                                f"set {set_id} names LU {raw_lu!r} absent from frame {frame_name!r}",
                                doc_id,
                                sent_id,
                                set_id,
                            )
                        )
                else:
                    lu = _infer_set_lu(store, tokens, target, frame_name)
        sets.append(
            AnnotationSet(
                id=set_id,
                doc_id=doc_id,
                sent_id=sent_id,
                target=target,
                frame_name=frame_name,
                lu=lu,
                fe_spans=tuple(fe_spans),
                known_frame=known_frame,
            )
        )
    return Sentence(doc_id=doc_id, sent_id=sent_id, field_tag=field_tag, tokens=tokens, sets=tuple(sets))


def build_index(corpus: Corpus) -> CorpusIndex:
    """Inverted indexes; postings sorted by (doc_id, sent_id, set id)."""
    frame_postings: dict[str, list[tuple[str, str, str]]] = {}
    sentence_sets: dict[tuple[str, str], list[str]] = {}
    lemma_postings: dict[str, list[tuple[str, str, int]]] = {}
    sentence_by_key: dict[tuple[str, str], Sentence] = {}

    for sentence in corpus:
        sentence_by_key[sentence.key] = sentence
        sentence_sets[sentence.key] = [s.id for s in sentence.sets]
        for aset in sentence.sets:
            frame_postings.setdefault(aset.frame_name, []).append((sentence.doc_id, sentence.sent_id, aset.id))
        for idx, tok in enumerate(sentence.tokens):
            lemma_postings.setdefault(tok.lemma.casefold(), []).append((sentence.doc_id, sentence.sent_id, idx))

    for postings in frame_postings.values():
        postings.sort()
    for postings in lemma_postings.values():
        postings.sort()
    return CorpusIndex(frame_postings, sentence_sets, lemma_postings, sentence_by_key)


def stats(corpus: Corpus) -> CorpusStats:
    sentence_count = len(corpus.sentences)
    if sentence_count == 0:
        raise EmptyCorpusError("corpus has no sentences")
    set_count = sum(len(s.sets) for s in corpus)
    word_count = sum(len(s.tokens) for s in corpus)
    return CorpusStats(
        sentence_count=sentence_count,
        set_count=set_count,
        sets_per_sentence=set_count / sentence_count,
        word_count=word_count,
    )


def sentence_records(corpus: Corpus) -> list[dict]:
    """Plain records in the corpus wire format (canonical field order)."""
    records = []
    for s in corpus:
        records.append(
            {
                "doc_id": s.doc_id,
                "sent_id": s.sent_id,
                "field_tag": s.field_tag,
                "tokens": [
                    {"surface": t.surface, "lemma": t.lemma, "pos": t.pos, "start": t.char_start, "end": t.char_end}
                    for t in s.tokens
                ],
                "sets": [
                    {
                        "frame": a.frame_name,
                        "target": list(a.target),
                        **({"lu": a.lu.short_name} if a.lu else {}),
                        "fes": [{"role": role, "span": list(span)} for role, span in a.fe_spans],
                    }
                    for a in s.sets
                ],
            }
        )
    return records


def serialize_corpus(corpus: Corpus) -> str:
    return "\n".join(json.dumps(r, ensure_ascii=False) for r in sentence_records(corpus)) + "\n"
