"""Brute-force reference matcher.

Deliberately naive and written independently of the indexed matcher: every
sentence is scanned for every pattern, and every role check walks all
annotation-set pairs. Used to cross-check the production matcher on
randomized corpora; keep it slow and obvious.
"""

from __future__ import annotations

from typing import Sequence

from .corpus import Corpus
from .patterns import Binding, Match, Pattern


def _contained(inner: tuple[int, int], outer: tuple[int, int]) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def _intersects(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def oracle_match_corpus(corpus: Corpus, patterns: Sequence[Pattern], overlap: str = "contain") -> list[Match]:
    results: list[Match] = []
    for sentence in corpus:
        for pattern in patterns:
            for anchor in sentence.sets:
                if not anchor.known_frame:
                    continue
                if anchor.frame_name not in pattern.anchor.frame_names:
                    continue
                if pattern.anchor.lu_whitelist is not None:
                    if anchor.lu is None:
                        continue
                    if (anchor.lu.lemma, anchor.lu.pos) not in pattern.anchor.lu_whitelist:
                        continue

                bindings = []
                all_roles_found = True
                for role in pattern.roles:
                    witnesses = []
                    for role_name, fe_span in anchor.fe_spans:
                        if role_name != role.role_name:
                            continue
                        for other in sentence.sets:
                            if other.id == anchor.id:
                                continue
                            if not other.known_frame:
                                continue
                            if other.frame_name not in role.filler.frame_names:
                                continue
                            if role.filler.lu_whitelist is not None:
                                if other.lu is None:
                                    continue
                                if (other.lu.lemma, other.lu.pos) not in role.filler.lu_whitelist:
                                    continue
                            if overlap == "contain":
                                ok = _contained(other.target, fe_span)
                            else:
                                ok = _intersects(other.target, fe_span)
                            if ok:
                                witnesses.append((other.target[0], other.id, fe_span))
                    if not witnesses:
                        all_roles_found = False
                        break
                    witnesses.sort(key=lambda w: (w[0], w[1], w[2]))
                    start, set_id, span = witnesses[0]
                    bindings.append(Binding(role_name=role.role_name, fe_span=span, filler_set_id=set_id))
                if all_roles_found:
                    results.append(
                        Match(
                            pattern_id=pattern.id,
                            doc_id=sentence.doc_id,
                            sent_id=sentence.sent_id,
                            anchor_set_id=anchor.id,
                            bindings=tuple(bindings),
                        )
                    )
    results.sort(key=lambda m: (m.pattern_id, m.doc_id, m.sent_id, m.anchor_set_id))
    return results
