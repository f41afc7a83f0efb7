"""Frame network store: frames, frame elements, relations, lexical units, qualia.

The store is loaded from a JSON Lines file (one record per line, tagged with
"kind") and is immutable after load. Frame names are the human-readable keys
everywhere; internal ids are derived strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

POS_TAGS = frozenset({"n", "v", "a", "adv", "other"})
CORENESS = frozenset({"core", "peripheral"})
RELATION_TYPES = frozenset(
    {
        "inheritance",
        "subframe",
        "use",
        "causative_of",
        "inchoative_of",
        "precedence",
        "perspective_of",
        "see_also",
    }
)
QUALIA_TYPES = frozenset({"agentive", "formal", "constitutive", "telic"})
RECORD_KINDS = ("frame", "frame_element", "frame_relation", "lexical_unit", "qualia_relation")


class StoreParseError(Exception):
    """Malformed store file. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class StoreValidationError(Exception):
    """Raised by load_store when the parsed store violates invariants."""

    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        lines = "; ".join(v.message for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"{len(violations)} violation(s): {lines}{more}")


class UnknownFrameError(KeyError):
    pass


@dataclass(frozen=True)
class Frame:
    name: str
    definition: str
    domain_tags: frozenset[str] = frozenset()

    @property
    def id(self) -> str:
        return self.name


@dataclass(frozen=True)
class FrameElement:
    frame: str
    name: str
    definition: str
    coreness: str  # "core" | "peripheral"


@dataclass(frozen=True)
class FrameRelation:
    relation_type: str
    source: str  # more specific / dependent side
    target: str


@dataclass(frozen=True)
class LexicalUnit:
    lemma: str
    pos: str
    frame: str
    word_forms: frozenset[str] = frozenset()

    @property
    def id(self) -> str:
        return f"{self.lemma}.{self.pos}@{self.frame}"

    @property
    def short_name(self) -> str:
        return f"{self.lemma}.{self.pos}"


@dataclass(frozen=True)
class QualiaRelation:
    source_lu: tuple[str, str, str]  # (lemma, pos, frame)
    target_lu: tuple[str, str, str]
    mediating_frame: str
    quale: str


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    ids: tuple[str, ...] = ()


def _require(record: dict, key: str, line_no: int):
    if key not in record:
        raise StoreParseError(line_no, f"missing field {key!r}")
    return record[key]


def _enum_field(record: dict, key: str, allowed: frozenset, line_no: int) -> str:
    value = _require(record, key, line_no)
    if value not in allowed:
        raise StoreParseError(line_no, f"{key} {value!r} not one of {sorted(allowed)}")
    return value


class FrameStore:
    """Immutable, queryable frame network.

    Reference fields are kept as names so a store with dangling references can
    be constructed and then reported by validate().
    """

    def __init__(
        self,
        frames: Iterable[Frame],
        frame_elements: Iterable[FrameElement] = (),
        relations: Iterable[FrameRelation] = (),
        lexical_units: Iterable[LexicalUnit] = (),
        qualia: Iterable[QualiaRelation] = (),
    ):
        self.frames: dict[str, Frame] = {}
        self._duplicate_frames: list[str] = []
        for fr in frames:
            if fr.name in self.frames:
                self._duplicate_frames.append(fr.name)
            self.frames[fr.name] = fr
        self.frame_elements = tuple(frame_elements)
        self.relations = tuple(relations)
        self.lexical_units = tuple(lexical_units)
        self.qualia = tuple(qualia)

        self._fe_by_frame: dict[str, dict[str, FrameElement]] = {}
        self._duplicate_fes: list[tuple[str, str]] = []
        for fe in self.frame_elements:
            bucket = self._fe_by_frame.setdefault(fe.frame, {})
            if fe.name in bucket:
                self._duplicate_fes.append((fe.frame, fe.name))
            bucket[fe.name] = fe

        self._lu_by_key: dict[tuple[str, str, str], LexicalUnit] = {}
        self._duplicate_lus: list[str] = []
        self._lus_by_lemma_pos: dict[tuple[str, str], list[LexicalUnit]] = {}
        self._word_form_index: dict[str, set[tuple[str, str]]] = {}
        self._word_form_lus: dict[str, list[LexicalUnit]] = {}
        for lu in self.lexical_units:
            key = (lu.lemma, lu.pos, lu.frame)
            if key in self._lu_by_key:
                self._duplicate_lus.append(lu.id)
            self._lu_by_key[key] = lu
            self._lus_by_lemma_pos.setdefault((lu.lemma, lu.pos), []).append(lu)
            for form in lu.word_forms:
                folded = form.casefold()
                self._word_form_index.setdefault(folded, set()).add((lu.lemma, lu.pos))
                self._word_form_lus.setdefault(folded, []).append(lu)

        self._edges_fwd: dict[str, dict[str, list[str]]] = {}
        self._edges_bwd: dict[str, dict[str, list[str]]] = {}
        for rel in self.relations:
            self._edges_fwd.setdefault(rel.relation_type, {}).setdefault(rel.source, []).append(rel.target)
            self._edges_bwd.setdefault(rel.relation_type, {}).setdefault(rel.target, []).append(rel.source)

    # -- queries ------------------------------------------------------------

    def frame(self, name: str) -> Frame:
        try:
            return self.frames[name]
        except KeyError:
            raise UnknownFrameError(name) from None

    def has_frame(self, name: str) -> bool:
        return name in self.frames

    def frame_element_names(self, frame_name: str) -> set[str]:
        return set(self._fe_by_frame.get(frame_name, {}))

    def has_role(self, frame_name: str, role_name: str) -> bool:
        return role_name in self._fe_by_frame.get(frame_name, {})

    def closure(self, frame_name: str, relation_type: str, direction: str) -> set[Frame]:
        """Transitive closure over edges of one relation type, start excluded.

        direction "targets" follows source->target edges; "sources" walks them
        backwards.
        """
        if frame_name not in self.frames:
            raise UnknownFrameError(frame_name)
        if relation_type not in RELATION_TYPES:
            raise ValueError(f"unknown relation type {relation_type!r}")
        if direction not in ("sources", "targets"):
            raise ValueError(f"direction must be 'sources' or 'targets', got {direction!r}")
        adjacency = (self._edges_fwd if direction == "targets" else self._edges_bwd).get(relation_type, {})
        seen: set[str] = set()
        stack = list(adjacency.get(frame_name, []))
        while stack:
            name = stack.pop()
            if name in seen:
                continue
            seen.add(name)
            stack.extend(adjacency.get(name, []))
        seen.discard(frame_name)
        return {self.frames[n] for n in seen if n in self.frames}

    def lookup_lus(self, lemma: str, pos: str) -> set[LexicalUnit]:
        return set(self._lus_by_lemma_pos.get((lemma, pos), []))

    def infer_lu(self, lemma: str, pos: str, frame_name: str) -> Optional[LexicalUnit]:
        """LU for (lemma, pos, frame); falls back to word-form resolution.

        Word forms cover inflections, spelling variants and abbreviations, so
        an input like "agr." can resolve to the LU of lemma "agressão".
        """
        direct = self._lu_by_key.get((lemma, pos, frame_name))
        if direct is not None:
            return direct
        candidates = [
            lu
            for lu in self._word_form_lus.get(lemma.casefold(), [])
            if lu.pos == pos and lu.frame == frame_name
        ]
        if not candidates:
            return None
        return min(candidates, key=lambda lu: lu.lemma)

    def resolve_word_form(self, surface_or_lemma: str) -> set[tuple[str, str]]:
        return set(self._word_form_index.get(surface_or_lemma.casefold(), set()))

    def get_lu(self, lemma: str, pos: str, frame_name: str) -> Optional[LexicalUnit]:
        return self._lu_by_key.get((lemma, pos, frame_name))

    def qualia_for(self, lemma: str, pos: str, frame_name: str) -> list[QualiaRelation]:
        """Qualia relations touching one LU, as source or target. Stored and
        queryable; pattern matching does not consult them."""
        key = (lemma, pos, frame_name)
        return [q for q in self.qualia if key in (q.source_lu, q.target_lu)]


# -- parsing ----------------------------------------------------------------


def parse_store(path: str) -> FrameStore:
    """Parse a frame-store JSONL file. Enum and shape errors raise here;
    referential problems are left for validate()."""
    frames: list[Frame] = []
    fes: list[FrameElement] = []
    relations: list[FrameRelation] = []
    lus: list[LexicalUnit] = []
    qualia: list[QualiaRelation] = []

    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise StoreParseError(line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise StoreParseError(line_no, "record is not an object")
            kind = _require(record, "kind", line_no)
            if kind == "frame":
                frames.append(
                    Frame(
                        name=str(_require(record, "name", line_no)),
                        definition=str(record.get("definition", "")),
                        domain_tags=frozenset(record.get("domain_tags", [])),
                    )
                )
            elif kind == "frame_element":
                fes.append(
                    FrameElement(
                        frame=str(_require(record, "frame", line_no)),
                        name=str(_require(record, "name", line_no)),
                        definition=str(record.get("definition", "")),
                        coreness=_enum_field(record, "coreness", CORENESS, line_no),
                    )
                )
            elif kind == "frame_relation":
                relations.append(
                    FrameRelation(
                        relation_type=_enum_field(record, "type", RELATION_TYPES, line_no),
                        source=str(_require(record, "source", line_no)),
                        target=str(_require(record, "target", line_no)),
                    )
                )
            elif kind == "lexical_unit":
                lemma = str(_require(record, "lemma", line_no))
                # The lemma is always one of its own word forms.
                word_forms = frozenset(record.get("word_forms", [])) | {lemma}
                lus.append(
                    LexicalUnit(
                        lemma=lemma,
                        pos=_enum_field(record, "pos", POS_TAGS, line_no),
                        frame=str(_require(record, "frame", line_no)),
                        word_forms=word_forms,
                    )
                )
            elif kind == "qualia_relation":
                qualia.append(
                    QualiaRelation(
                        source_lu=_lu_ref(record, "source", line_no),
                        target_lu=_lu_ref(record, "target", line_no),
                        mediating_frame=str(_require(record, "frame", line_no)),
                        quale=_enum_field(record, "quale", QUALIA_TYPES, line_no),
                    )
                )
            else:
                raise StoreParseError(line_no, f"unknown kind {kind!r}")
    return FrameStore(frames, fes, relations, lus, qualia)


def _lu_ref(record: dict, key: str, line_no: int) -> tuple[str, str, str]:
    ref = _require(record, key, line_no)
    if not isinstance(ref, dict) or not {"lemma", "pos", "frame"} <= set(ref):
        raise StoreParseError(line_no, f"{key} must be an object with lemma/pos/frame")
    if ref["pos"] not in POS_TAGS:
        raise StoreParseError(line_no, f"{key}.pos {ref['pos']!r} not one of {sorted(POS_TAGS)}")
    return (str(ref["lemma"]), str(ref["pos"]), str(ref["frame"]))


# -- validation ---------------------------------------------------------------


def validate(store: FrameStore) -> list[Violation]:
    """All invariant violations in the store; empty list means it is sound."""
    out: list[Violation] = []

    for name in store._duplicate_frames:
        out.append(Violation("duplicate_frame", f"frame name {name!r} defined more than once", (name,)))
    for fr in store.frames.values():
        if not fr.definition.strip():
            out.append(Violation("empty_definition", f"frame {fr.name!r} has an empty definition", (fr.name,)))

    for frame_name, fe_name in store._duplicate_fes:
        out.append(
            Violation(
                "duplicate_frame_element",
                f"frame element {fe_name!r} defined more than once on frame {frame_name!r}",
                (frame_name, fe_name),
            )
        )
    for fe in store.frame_elements:
        if fe.frame not in store.frames:
            out.append(
                Violation(
                    "dangling_reference",
                    f"frame element {fe.name!r} references missing frame {fe.frame!r}",
                    (fe.frame, fe.name),
                )
            )

    for rel in store.relations:
        for endpoint in (rel.source, rel.target):
            if endpoint not in store.frames:
                out.append(
                    Violation(
                        "dangling_reference",
                        f"{rel.relation_type} relation references missing frame {endpoint!r}",
                        (rel.source, rel.target),
                    )
                )
        if rel.source == rel.target:
            out.append(
                Violation(
                    "self_loop",
                    f"{rel.relation_type} self-loop on frame {rel.source!r}",
                    (rel.source,),
                )
            )

    out.extend(_inheritance_cycles(store))

    for lu_id in store._duplicate_lus:
        out.append(Violation("duplicate_lexical_unit", f"lexical unit {lu_id} defined more than once", (lu_id,)))
    for lu in store.lexical_units:
        if lu.frame not in store.frames:
            out.append(
                Violation(
                    "dangling_reference",
                    f"lexical unit {lu.short_name} references missing frame {lu.frame!r}",
                    (lu.id,),
                )
            )
        if lu.lemma not in lu.word_forms:
            out.append(
                Violation("lemma_not_word_form", f"lexical unit {lu.id} lemma missing from word_forms", (lu.id,))
            )

    seen_qualia: set[tuple] = set()
    for q in store.qualia:
        key = (q.source_lu, q.target_lu, q.mediating_frame, q.quale)
        if key in seen_qualia:
            out.append(Violation("duplicate_qualia", f"duplicate qualia relation {key}", (str(key),)))
        seen_qualia.add(key)
        for label, ref in (("source", q.source_lu), ("target", q.target_lu)):
            if ref not in store._lu_by_key:
                out.append(
                    Violation(
                        "dangling_reference",
                        f"qualia {label} LU {ref[0]}.{ref[1]}@{ref[2]} not in store",
                        (f"{ref[0]}.{ref[1]}@{ref[2]}",),
                    )
                )
        if q.mediating_frame not in store.frames:
            out.append(
                Violation(
                    "dangling_reference",
                    f"qualia relation references missing frame {q.mediating_frame!r}",
                    (q.mediating_frame,),
                )
            )
    return out


def _inheritance_cycles(store: FrameStore) -> list[Violation]:
    """One violation per strongly connected component of size > 1 in the
    inheritance subgraph, listing its member frames and internal edges."""
    adjacency: dict[str, list[str]] = {}
    edges: list[tuple[str, str]] = []
    for rel in store.relations:
        if rel.relation_type == "inheritance" and rel.source != rel.target:
            adjacency.setdefault(rel.source, []).append(rel.target)
            edges.append((rel.source, rel.target))

    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    sccs: list[list[str]] = []

    def strongconnect(root: str):
        # Iterative Tarjan; store files can hold long inheritance chains.
        work = [(root, iter(adjacency.get(root, [])))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = lowlink[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adjacency.get(succ, []))))
                    advanced = True
                    break
                elif succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1:
                    sccs.append(component)

    nodes = set(adjacency)
    for targets in adjacency.values():
        nodes.update(targets)
    for node in sorted(nodes):
        if node not in index:
            strongconnect(node)

    violations = []
    for component in sccs:
        members = sorted(component)
        member_set = set(members)
        cycle_edges = sorted((s, t) for s, t in edges if s in member_set and t in member_set)
        edge_text = ", ".join(f"{s}->{t}" for s, t in cycle_edges)
        violations.append(
            Violation(
                "inheritance_cycle",
                f"inheritance cycle through {', '.join(members)} via edges {edge_text}",
                tuple(members),
            )
        )
    return violations


# -- load / serialize --------------------------------------------------------


def load_store(path: str) -> FrameStore:
    """Parse and validate; returns the store or raises StoreValidationError."""
    store = parse_store(path)
    violations = validate(store)
    if violations:
        raise StoreValidationError(violations)
    return store


def store_records(store: FrameStore) -> list[dict]:
    """Canonically ordered plain records (stable across load/serialize cycles)."""
    records: list[dict] = []
    for fr in sorted(store.frames.values(), key=lambda f: f.name):
        records.append(
            {
                "kind": "frame",
                "name": fr.name,
                "definition": fr.definition,
                "domain_tags": sorted(fr.domain_tags),
            }
        )
    for fe in sorted(store.frame_elements, key=lambda e: (e.frame, e.name)):
        records.append(
            {
                "kind": "frame_element",
                "frame": fe.frame,
                "name": fe.name,
                "definition": fe.definition,
                "coreness": fe.coreness,
            }
        )
    for rel in sorted(store.relations, key=lambda r: (r.relation_type, r.source, r.target)):
        records.append(
            {"kind": "frame_relation", "type": rel.relation_type, "source": rel.source, "target": rel.target}
        )
    for lu in sorted(store.lexical_units, key=lambda u: (u.lemma, u.pos, u.frame)):
        records.append(
            {
                "kind": "lexical_unit",
                "lemma": lu.lemma,
                "pos": lu.pos,
                "frame": lu.frame,
                "word_forms": sorted(lu.word_forms),
            }
        )
    for q in sorted(store.qualia, key=lambda q: (q.source_lu, q.target_lu, q.mediating_frame, q.quale)):
        records.append(
            {
                "kind": "qualia_relation",
                "source": {"lemma": q.source_lu[0], "pos": q.source_lu[1], "frame": q.source_lu[2]},
                "target": {"lemma": q.target_lu[0], "pos": q.target_lu[1], "frame": q.target_lu[2]},
                "frame": q.mediating_frame,
                "quale": q.quale,
            }
        )
    return records


def serialize_store(store: FrameStore) -> str:
    return "\n".join(json.dumps(r, ensure_ascii=False, sort_keys=True) for r in store_records(store)) + "\n"
