"""PII removal: detector ensemble, 2-of-N span voting, frequency flagging.

A span is only redacted when detections from enough distinct detectors
overlap it; everything else is surfaced for manual review. Agreement means
any nonzero character overlap between spans of distinct detector ids, and
the redaction covers the union of the agreeing spans (recall-biased).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

logger = logging.getLogger(__name__)

PII_CATEGORIES = frozenset({"person_name", "location", "org", "id_number", "phone", "date", "other"})


@dataclass(frozen=True)
class PiiDetection:
    detector_id: str
    start: int
    end: int
    category: str


@dataclass(frozen=True)
class RedactionPolicy:
    min_agreeing_detectors: int = 2
    merge_overlaps: bool = True
    replacement_token: str = "[REDACTED]"

    def __post_init__(self):
        if self.min_agreeing_detectors < 1:
            raise ValueError("min_agreeing_detectors must be >= 1")


@dataclass(frozen=True)
class AuditEntry:
    start: int
    end: int
    detector_ids: tuple[str, ...]
    categories: tuple[str, ...]
    action: str  # "redacted" | "flagged_only"

    def to_record(self) -> dict:
        return {
            "span": [self.start, self.end],
            "detectors": list(self.detector_ids),
            "categories": list(self.categories),
            "action": self.action,
        }


@dataclass
class RedactionAudit:
    entries: list[AuditEntry] = field(default_factory=list)

    def redacted_spans(self) -> list[tuple[int, int]]:
        return [(e.start, e.end) for e in self.entries if e.action == "redacted"]


# -- detectors ----------------------------------------------------------------


class Detector:
    """Text -> detections. Subclasses set detector_id and implement detect()."""

    detector_id = "detector"

    def detect(self, text: str) -> list[PiiDetection]:
        raise NotImplementedError

    def __call__(self, text: str) -> list[PiiDetection]:
        return self.detect(text)


class RegexDetector(Detector):
    """Pattern pack for Brazilian ids, phone numbers and full dates."""

    DEFAULT_PATTERNS: Sequence[tuple[str, str]] = (
        ("id_number", r"\b\d{3}\.\d{3}\.\d{3}-\d{2}\b"),  # CPF
        ("id_number", r"\bCPF:?\s*\d{11}\b"),
        ("phone", r"\(?\b\d{2}\)?[\s.-]?9?\d{4}[\s.-]\d{4}\b"),
        ("date", r"\b\d{1,2}/\d{1,2}/\d{2,4}\b"),
        ("date", r"\b\d{1,2}-\d{1,2}-\d{4}\b"),
    )

    def __init__(self, patterns: Iterable[tuple[str, str]] | None = None, detector_id: str = "regex"):
        self.detector_id = detector_id
        raw = list(patterns) if patterns is not None else list(self.DEFAULT_PATTERNS)
        self.patterns = [(category, re.compile(expr)) for category, expr in raw]

    def detect(self, text: str) -> list[PiiDetection]:
        out = []
        for category, expr in self.patterns:
            for m in expr.finditer(text):
                if m.start() < m.end():
                    out.append(PiiDetection(self.detector_id, m.start(), m.end(), category))
        return out


def edit_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


_WORD_RE = re.compile(r"\w+(?:[-']\w+)*", re.UNICODE)


class GazetteerDetector(Detector):
    """Fuzzy search against a list of known names/venues.

    A window of as many tokens as the entry has matches when the normalized
    edit distance (case-insensitive) is at most `threshold` of the entry
    length.
    """

    def __init__(
        self,
        entries: Iterable[str],
        category: str = "location",
        threshold: float = 0.2,
        detector_id: str = "gazetteer",
    ):
        self.detector_id = detector_id
        self.category = category
        self.threshold = threshold
        self.entries = [e.strip() for e in entries if e.strip()]

    @classmethod
    def from_file(cls, path: str, **kwargs) -> "GazetteerDetector":
        with open(path, encoding="utf-8") as fh:
            return cls(fh.read().splitlines(), **kwargs)

    def detect(self, text: str) -> list[PiiDetection]:
        token_spans = [(m.start(), m.end()) for m in _WORD_RE.finditer(text)]
        out = []
        for entry in self.entries:
            n_words = max(1, len(entry.split()))
            budget = int(self.threshold * len(entry))
            folded_entry = entry.casefold()
            for i in range(len(token_spans) - n_words + 1):
                start = token_spans[i][0]
                end = token_spans[i + n_words - 1][1]
                candidate = text[start:end].casefold()
                if abs(len(candidate) - len(folded_entry)) > budget:
                    continue
                if edit_distance(candidate, folded_entry) <= budget:
                    out.append(PiiDetection(self.detector_id, start, end, self.category))
        return out


def _load_wordlist(path: str) -> set[str]:
    with open(path, encoding="utf-8") as fh:
        return {line.strip().casefold() for line in fh if line.strip()}


def flag_candidate_names(text: str, common_words: set[str], known_names: set[str]) -> list[tuple[int, int]]:
    """Capitalized tokens that look like personal names, for manual review.

    Flags tokens absent from the common-word list that are either known names
    or absent from both lists. Flagged spans are never auto-redacted.
    """
    spans = []
    for m in _WORD_RE.finditer(text):
        token = m.group(0)
        if not token[0].isupper():
            continue
        folded = token.casefold()
        # Known common words are safe; known names and fully unknown tokens
        # both warrant a human look.
        if folded not in common_words:
            spans.append((m.start(), m.end()))
    return spans


class NameFrequencyDetector(Detector):
    """Frequency-list flagger wrapped as an ensemble member."""

    def __init__(self, common_words: set[str], known_names: set[str], detector_id: str = "namefreq"):
        self.detector_id = detector_id
        self.common_words = common_words
        self.known_names = known_names

    @classmethod
    def from_files(cls, common_words_path: str, known_names_path: str, **kwargs) -> "NameFrequencyDetector":
        return cls(_load_wordlist(common_words_path), _load_wordlist(known_names_path), **kwargs)

    def detect(self, text: str) -> list[PiiDetection]:
        return [
            PiiDetection(self.detector_id, start, end, "person_name")
            for start, end in flag_candidate_names(text, self.common_words, self.known_names)
        ]


class CallableDetector(Detector):
    """Adapter for external components (e.g. a neural NER service)."""

    def __init__(self, detector_id: str, fn: Callable[[str], Iterable[tuple[int, int, str]]]):
        self.detector_id = detector_id
        self.fn = fn

    def detect(self, text: str) -> list[PiiDetection]:
        return [PiiDetection(self.detector_id, s, e, category) for s, e, category in self.fn(text)]


def run_detectors(text: str, detectors: Sequence[Detector]) -> list[PiiDetection]:
    """All detections from all detectors; a failing detector contributes nothing."""
    out: list[PiiDetection] = []
    for det in detectors:
        try:
            found = det.detect(text)
        except Exception:
            logger.exception("detector %s failed; skipping", det.detector_id)
            continue
        out.extend(PiiDetection(det.detector_id, d.start, d.end, d.category) for d in found)
    return out


# -- voting and redaction ------------------------------------------------------


def _protected_spans(text: str, token: str) -> list[tuple[int, int]]:
    spans = []
    pos = text.find(token)
    while pos != -1:
        spans.append((pos, pos + len(token)))
        pos = text.find(token, pos + len(token))
    return spans


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def vote_and_redact(
    text: str, detections: Sequence[PiiDetection], policy: RedactionPolicy = RedactionPolicy()
) -> tuple[str, RedactionAudit]:
    """Cluster overlapping detections, redact clusters that meet the vote.

    Clusters below the threshold are audited as flagged_only and the text is
    left untouched there. Existing replacement tokens in the input act as
    stop-spans, which makes redaction idempotent.
    """
    for d in detections:
        if not (0 <= d.start < d.end <= len(text)):
            raise ValueError(f"detection span [{d.start}, {d.end}) out of bounds for text of length {len(text)}")

    stop_spans = _protected_spans(text, policy.replacement_token)
    live = [d for d in detections if not any(_overlaps((d.start, d.end), s) for s in stop_spans)]

    clusters: list[list[PiiDetection]] = []
    if policy.merge_overlaps:
        for det in sorted(live, key=lambda d: (d.start, d.end, d.detector_id)):
            if clusters and det.start < max(d.end for d in clusters[-1]):
                clusters[-1].append(det)
            else:
                clusters.append([det])
    else:
        by_span: dict[tuple[int, int], list[PiiDetection]] = {}
        for det in live:
            by_span.setdefault((det.start, det.end), []).append(det)
        clusters = [by_span[k] for k in sorted(by_span)]

    audit = RedactionAudit()
    replacements: list[tuple[int, int]] = []
    for cluster in clusters:
        start = min(d.start for d in cluster)
        end = max(d.end for d in cluster)
        detector_ids = tuple(sorted({d.detector_id for d in cluster}))
        categories = tuple(sorted({d.category for d in cluster}))
        action = "redacted" if len(detector_ids) >= policy.min_agreeing_detectors else "flagged_only"
        audit.entries.append(AuditEntry(start, end, detector_ids, categories, action))
        if action == "redacted":
            replacements.append((start, end))

    redacted = text
    for start, end in sorted(replacements, reverse=True):
        redacted = redacted[:start] + policy.replacement_token + redacted[end:]
    return redacted, audit


def anonymize_text(
    text: str, detectors: Sequence[Detector], policy: RedactionPolicy = RedactionPolicy()
) -> tuple[str, RedactionAudit]:
    return vote_and_redact(text, run_detectors(text, detectors), policy)
