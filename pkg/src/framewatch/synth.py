"""Seeded generators for randomized testing and benchmarking.

Everything here is deterministic in the seed: random frame-network stores
(DAG inheritance plus an optional injected back-edge), random annotated
corpora drawn from a store's frames and roles, and random patterns that are
guaranteed to compile against that store.
"""

from __future__ import annotations

import random
from typing import Optional

from .corpus import AnnotationSet, Corpus, Sentence, Token
from .patterns import Pattern, compile_pattern
from .store import Frame, FrameRelation, FrameStore, LexicalUnit

_FILLER_LEMMAS = [
    "o", "a", "de", "em", "que", "com", "para", "ter", "ser", "estar",
    "hoje", "ontem", "muito", "casa", "dia", "vez", "ano", "refere", "nega", "uso",
]


def random_dag_store(n_frames: int, n_edges: int, seed: int) -> tuple[FrameStore, list[tuple[str, str]]]:
    """A store of bare frames whose inheritance edges form a DAG.

    Returns (store, edges). Edges always point from a later frame to an
    earlier one in a shuffled topological order, so the graph is acyclic by
    construction.
    """
    rng = random.Random(seed)
    names = [f"Frame_{i:03d}" for i in range(n_frames)]
    order = names[:]
    rng.shuffle(order)
    rank = {name: i for i, name in enumerate(order)}

    edges: set[tuple[str, str]] = set()
    attempts = 0
    while len(edges) < n_edges and attempts < n_edges * 20:
        attempts += 1
        a, b = rng.sample(names, 2)
        source, target = (a, b) if rank[a] > rank[b] else (b, a)
        edges.add((source, target))

    frames = [Frame(name=n, definition=f"Synthetic frame {n}.") for n in names]
    relations = [FrameRelation("inheritance", s, t) for s, t in sorted(edges)]
    return FrameStore(frames, relations=relations), sorted(edges)


def inject_back_edge(
    store: FrameStore, edges: list[tuple[str, str]], seed: int
) -> tuple[Optional[FrameStore], Optional[tuple[str, str]]]:
    """Rebuild the store with one extra inheritance edge that closes a cycle.

    The new edge runs from some frame to one of its (transitive) descendants.
    Returns (None, None) when the DAG has no edges to invert.
    """
    if not edges:
        return None, None
    rng = random.Random(seed)
    adjacency: dict[str, set[str]] = {}
    for s, t in edges:
        adjacency.setdefault(s, set()).add(t)

    reachable_pairs = []
    for start in adjacency:
        seen: set[str] = set()
        stack = list(adjacency.get(start, ()))
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adjacency.get(node, ()))
        reachable_pairs.extend((start, node) for node in seen)
    if not reachable_pairs:
        return None, None

    source, target = rng.choice(sorted(reachable_pairs))
    back_edge = (target, source)  # ancestor -> descendant closes the cycle
    relations = list(store.relations) + [FrameRelation("inheritance", *back_edge)]
    rebuilt = FrameStore(store.frames.values(), store.frame_elements, relations, store.lexical_units, store.qualia)
    return rebuilt, back_edge


def synth_corpus(
    store: FrameStore,
    n_sentences: int,
    seed: int,
    max_sets: int = 6,
    doc_id: str = "synth",
    min_tokens: int = 5,
    max_tokens: int = 14,
) -> Corpus:
    """Random corpus over the store's frames, built directly as objects.

    Targets usually reuse a lexical-unit lemma of the evoked frame so LU
    inference has something to find; frame-element spans are placed anywhere
    in the sentence, so they frequently cover other sets' targets.
    """
    rng = random.Random(seed)
    frame_names = sorted(store.frames)
    lus_by_frame: dict[str, list[LexicalUnit]] = {}
    for lu in store.lexical_units:
        lus_by_frame.setdefault(lu.frame, []).append(lu)
    for bucket in lus_by_frame.values():
        bucket.sort(key=lambda lu: lu.id)
    roles_by_frame = {name: sorted(store.frame_element_names(name)) for name in frame_names}

    sentences = []
    for s_idx in range(n_sentences):
        n_tokens = rng.randint(min_tokens, max_tokens)
        lemmas = [rng.choice(_FILLER_LEMMAS) for _ in range(n_tokens)]
        poses = ["other"] * n_tokens

        n_sets = rng.randint(0, max_sets)
        sets = []
        sent_id = f"s{s_idx}"
        for ordinal in range(n_sets):
            frame_name = rng.choice(frame_names)
            position = rng.randrange(n_tokens)
            frame_lus = lus_by_frame.get(frame_name)
            if frame_lus and rng.random() < 0.8:
                lu = rng.choice(frame_lus)
                lemmas[position] = lu.lemma
                poses[position] = lu.pos
            target = (position, position + 1)

            fe_spans = []
            for role in roles_by_frame.get(frame_name, []):
                if rng.random() < 0.55:
                    start = rng.randrange(n_tokens)
                    end = rng.randint(start + 1, min(n_tokens, start + rng.randint(1, 4)))
                    fe_spans.append((role, (start, end)))
            sets.append((ordinal, frame_name, target, tuple(fe_spans)))

        tokens = []
        offset = 0
        for lemma, pos in zip(lemmas, poses):
            tokens.append(Token(surface=lemma, lemma=lemma, pos=pos, char_start=offset, char_end=offset + len(lemma)))
            offset += len(lemma) + 1

        built_sets = []
        for ordinal, frame_name, target, fe_spans in sets:
            tok = tokens[target[0]]
            built_sets.append(
                AnnotationSet(
                    id=f"{doc_id}:{sent_id}:{ordinal}",
                    doc_id=doc_id,
                    sent_id=sent_id,
                    target=target,
                    frame_name=frame_name,
                    lu=store.infer_lu(tok.lemma, tok.pos, frame_name),
                    fe_spans=fe_spans,
                    known_frame=store.has_frame(frame_name),
                )
            )
        sentences.append(
            Sentence(doc_id=doc_id, sent_id=sent_id, field_tag="S", tokens=tuple(tokens), sets=tuple(built_sets))
        )
    return Corpus(sentences=sentences)


def synth_patterns(store: FrameStore, n_patterns: int, seed: int) -> list[Pattern]:
    """Random patterns guaranteed to compile against the store."""
    rng = random.Random(seed)
    frame_names = sorted(store.frames)
    lus_by_frame: dict[str, list[LexicalUnit]] = {}
    for lu in store.lexical_units:
        lus_by_frame.setdefault(lu.frame, []).append(lu)

    def random_constraint(allow_expand: bool) -> dict:
        frames = rng.sample(frame_names, rng.randint(1, min(3, len(frame_names))))
        raw: dict = {"frames": frames}
        if allow_expand and rng.random() < 0.25:
            raw["expand"] = {"relation": "inheritance", "direction": rng.choice(["sources", "targets"])}
        if rng.random() < 0.3:
            pool = [lu for f in frames for lu in lus_by_frame.get(f, [])]
            if pool:
                chosen = rng.sample(pool, min(len(pool), rng.randint(1, 3)))
                raw["lus"] = sorted([lu.lemma, lu.pos] for lu in chosen)
        return raw

    patterns = []
    for p_idx in range(n_patterns):
        anchor = random_constraint(allow_expand=True)
        roles = []
        role_pool = sorted({r for f in anchor["frames"] for r in store.frame_element_names(f)})
        for role in rng.sample(role_pool, min(len(role_pool), rng.randint(0, 2))):
            roles.append({"role": role, "filler": random_constraint(allow_expand=False)})
        raw = {
            "id": f"rp{p_idx:03d}",
            "name": f"Random pattern {p_idx}",
            "scenario": "synthetic",
            "anchor": anchor,
            "roles": roles,
        }
        patterns.append(compile_pattern(raw, store))
    return patterns
