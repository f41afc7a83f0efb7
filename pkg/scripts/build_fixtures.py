#!/usr/bin/env python3
"""Regenerate the data files shipped with the package.

Emits src/framewatch/data/{frame_store,patterns,sample_corpus}.jsonl. The
store covers a violence domain and a healthcare domain (32 frames); the
pattern pack holds the documented surveillance patterns plus the
reconstructed ones, flagged as such; the sample corpus holds a handful of
worked sentences that the patterns fire on.
"""

import json
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "framewatch" / "data"

# (name, definition, tags, [(fe, coreness)], [(lemma, pos, [extra word forms])])
FRAMES = [
    ("Violence_scenario", "An Aggressor subjects a Victim to violent treatment.", ["violence"],
     [("Aggressor", "core"), ("Victim", "core"), ("Means", "peripheral"), ("Place", "peripheral")],
     [("violência", "n", ["violencia"]), ("agressão", "n", ["agressao", "agr.", "agressões"]),
      ("agredir", "v", ["agride", "agrediu", "agredida", "agredido"])]),
    ("Cause_harm", "An Agent injures a Victim.", ["violence"],
     [("Agent", "core"), ("Victim", "core"), ("Body_part", "peripheral"), ("Instrument", "peripheral")],
     [("bater", "v", ["bate", "bateu", "batia", "bata"]), ("machucar", "v", ["machuca", "machucou"]),
      ("espancar", "v", ["espanca", "espancou"]), ("empurrar", "v", ["empurra", "empurrou"])]),
    ("Experience_bodily_harm", "An Experiencer is involved in a bodily injury to a Body_part.", ["violence", "healthcare"],
     [("Body_part", "core"), ("Experiencer", "core"), ("Injuring_entity", "peripheral"), ("Severity", "peripheral")],
     [("lesão", "n", ["lesao", "lesões", "lesoes"]), ("ferimento", "n", ["ferimentos"]),
      ("fratura", "n", ["fraturas"]), ("machucar", "v", ["machucou-se", "machucado"])]),
    ("Being_hurt", "A Victim is in an injured state.", ["violence"],
     [("Victim", "core"), ("Injury", "core")],
     [("ferido", "a", ["ferida"]), ("machucado", "a", ["machucada"])]),
    ("Undergoing", "An Entity is affected by an Event.", [],
     [("Entity", "core"), ("Event", "core")],
     [("sofrer", "v", ["sofre", "sofreu"]), ("passar", "v", ["passou"])]),
    ("Kinship", "An Alter is related to an Ego by family ties.", ["violence"],
     [("Alter", "core"), ("Ego", "core")],
     [("pai", "n", ["pais"]), ("mãe", "n", ["mae", "mães"]), ("filho", "n", ["filhos"]),
      ("filha", "n", ["filhas"]), ("irmão", "n", ["irmao", "irmãos"]), ("tio", "n", ["tia"]),
      ("avó", "n", ["avo", "avô"]), ("padrasto", "n", []), ("enteada", "n", ["enteado"]),
      ("sogro", "n", ["sogra"])]),
    ("Personal_relationship", "Two Partners are in a personal relationship.", ["violence"],
     [("Partner_1", "core"), ("Partner_2", "core"), ("Relationship", "peripheral")],
     [("marido", "n", ["maridos"]), ("esposa", "n", ["esposo"]), ("companheiro", "n", ["companheira"]),
      ("namorado", "n", ["namorada"]), ("ex-marido", "n", ["ex", "ex-companheiro"]),
      ("vizinho", "n", ["vizinha"]), ("amigo", "n", ["amiga"]), ("parceiro", "n", ["parceira"])]),
    ("Abandonment", "An Agent leaves a Theme behind without care.", ["violence"],
     [("Agent", "core"), ("Theme", "core"), ("Place", "peripheral")],
     [("abandonar", "v", ["abandona", "abandonou", "abandonada", "abandonado"]),
      ("abandono", "n", []), ("deixar", "v", ["deixa", "deixou"])]),
    ("Abusing", "An Abuser mistreats a Victim in an ongoing way.", ["violence"],
     [("Abuser", "core"), ("Victim", "core"), ("Type", "peripheral")],
     [("abusar", "v", ["abusa", "abusou"]), ("abuso", "n", ["abusos"]),
      ("maltratar", "v", ["maltrata", "maltratou"]), ("maus-tratos", "n", ["maus tratos"])]),
    ("Rape", "A Perpetrator subjects a Victim to sexual violence.", ["violence"],
     [("Perpetrator", "core"), ("Victim", "core"), ("Act", "peripheral")],
     [("estuprar", "v", ["estupra", "estuprou", "estuprada"]), ("estupro", "n", []),
      ("violentar", "v", ["violenta", "violentou", "violentada"])]),
    ("Risk_situation", "A Dangerous_entity puts an Asset at risk.", ["violence"],
     [("Dangerous_entity", "core"), ("Asset", "core"), ("Situation", "peripheral")],
     [("ameaça", "n", ["ameaca", "ameaças", "ameacas"]), ("ameaçar", "v", ["ameaçou", "ameacou", "ameaçado"]),
      ("risco", "n", ["riscos"]), ("perigo", "n", [])]),
    ("Fear", "An Experiencer is afraid of a Stimulus.", ["violence"],
     [("Experiencer", "core"), ("Stimulus", "core"), ("Degree", "peripheral")],
     [("medo", "n", ["medos"]), ("temer", "v", ["teme", "temia"]), ("pavor", "n", []),
      ("amedrontar", "v", ["amedrontada", "amedrontado"])]),
    ("Domain", "A Predicate is restricted to a particular Domain.", [],
     [("Predicate", "core"), ("Domain", "core")],
     [("psicológico", "a", ["psicologico", "psicológica", "psicologica"]),
      ("físico", "a", ["fisico", "física", "fisica"]), ("sexual", "a", ["sexuais"]),
      ("verbal", "a", ["verbais"])]),
    ("People_by_age", "A Person characterized by their Age.", [],
     [("Person", "core"), ("Age", "peripheral")],
     [("criança", "n", ["crianca", "crianças", "criancas"]), ("idoso", "n", ["idosa", "idosos"]),
      ("bebê", "n", ["bebe", "bb"]), ("adolescente", "n", []), ("menor", "n", ["menores"])]),
    ("Statement", "A Speaker communicates a Message.", ["healthcare"],
     [("Speaker", "core"), ("Message", "core"), ("Addressee", "peripheral"), ("Topic", "peripheral")],
     [("relatar", "v", ["relata", "relatou"]), ("dizer", "v", ["diz", "disse"]),
      ("contar", "v", ["conta", "contou"]), ("afirmar", "v", ["afirma"]),
      ("referir", "v", ["refere", "referiu"]), ("negar", "v", ["nega", "negou"])]),
    ("Emotion_directed", "An Experiencer feels an emotion, possibly for a Reason.", ["healthcare"],
     [("Experiencer", "core"), ("Reason", "peripheral"), ("Degree", "peripheral")],
     [("estresse", "n", ["stress", "estres"]), ("nervoso", "a", ["nervosa"]),
      ("ansiedade", "n", []), ("choro", "n", [])]),
    ("Healthcare_scenario", "A Patient is attended by a health Professional.", ["healthcare"],
     [("Patient", "core"), ("Professional", "core"), ("Institution", "peripheral")],
     [("consulta", "n", ["consultas"]), ("atendimento", "n", [])]),
    ("People_by_health_condition", "A Patient characterized by a health Condition.", ["healthcare"],
     [("Patient", "core"), ("Condition", "peripheral")],
     [("paciente", "n", ["pacientes", "pcte", "pct"]), ("usuário", "n", ["usuaria", "usuario"]),
      ("gestante", "n", [])]),
    ("Symptoms", "A Patient presents a symptom on a Body_part.", ["healthcare"],
     [("Patient", "core"), ("Body_part", "core"), ("Descriptor", "peripheral"), ("Duration", "peripheral")],
     [("dor", "n", ["dores"]), ("febre", "n", []), ("tontura", "n", ["tonturas"]),
      ("náusea", "n", ["nausea", "náuseas"]), ("hematoma", "n", ["hematomas"])]),
    ("Body_parts", "A Body_part, possibly of a Possessor.", ["healthcare"],
     [("Body_part", "core"), ("Possessor", "peripheral")],
     [("tórax", "n", ["torax"]), ("cabeça", "n", ["cabeca"]), ("braço", "n", ["braco", "braços"]),
      ("peito", "n", []), ("olho", "n", ["olhos"]), ("costas", "n", []), ("rosto", "n", [])]),
    ("Cognitive_connection", "Concept_1 is connected to Concept_2.", [],
     [("Concept_1", "core"), ("Concept_2", "core")],
     [("associado", "a", ["associada"]), ("relacionado", "a", ["relacionada"]), ("ligado", "a", ["ligada"])]),
    ("Medical_conditions", "A Patient suffers from an Ailment.", ["healthcare"],
     [("Patient", "core"), ("Ailment", "core")],
     [("hipertensão", "n", ["hipertensao", "HAS"]), ("diabetes", "n", ["DM", "dm2"]),
      ("depressão", "n", ["depressao"]), ("asma", "n", [])]),
    ("Medication", "A Medication, possibly taken by a Patient.", ["healthcare"],
     [("Medication", "core"), ("Patient", "peripheral"), ("Dose", "peripheral")],
     [("medicamento", "n", ["medicamentos"]), ("remédio", "n", ["remedio", "remédios"]),
      ("dipirona", "n", []), ("fluoxetina", "n", [])]),
    ("Cure", "A Healer treats a Patient.", ["healthcare"],
     [("Healer", "core"), ("Patient", "core"), ("Treatment", "peripheral")],
     [("tratar", "v", ["trata", "tratou"]), ("tratamento", "n", []), ("curar", "v", []),
      ("encaminhar", "v", ["encaminhada", "encaminhado"])]),
    ("Institutions", "An Institution located at a Place.", [],
     [("Institution", "core"), ("Place", "peripheral")],
     [("hospital", "n", ["hospitais"]), ("posto", "n", []), ("escola", "n", ["escolas"]),
      ("delegacia", "n", [])]),
    ("Attack", "An Assailant physically attacks a Victim.", ["violence"],
     [("Assailant", "core"), ("Victim", "core"), ("Weapon", "peripheral")],
     [("atacar", "v", ["ataca", "atacou"]), ("ataque", "n", ["ataques"]),
      ("golpear", "v", ["golpeou"]), ("soco", "n", ["socos"])]),
    ("Transitive_action", "An Agent acts on a Patient.", [],
     [("Agent", "core"), ("Patient", "core")],
     []),
    ("Weapon", "A Weapon usable by a Wielder.", ["violence"],
     [("Weapon", "core"), ("Wielder", "peripheral")],
     [("faca", "n", ["facas"]), ("arma", "n", ["armas"]), ("revólver", "n", ["revolver"])]),
    ("Cutting", "An Agent cuts an Item, possibly with an Instrument.", [],
     [("Agent", "core"), ("Item", "core"), ("Instrument", "peripheral")],
     [("cortar", "v", ["corta", "cortou"]), ("corte", "n", ["cortes"])]),
    ("Quarreling", "Arguers have a verbal dispute over an Issue.", ["violence"],
     [("Arguers", "core"), ("Issue", "peripheral")],
     [("brigar", "v", ["brigou"]), ("briga", "n", ["brigas"]),
      ("discutir", "v", ["discute, discutiu"]), ("discussão", "n", ["discussao"])]),
    ("Intoxication", "An Experiencer is intoxicated by a Substance.", ["healthcare"],
     [("Experiencer", "core"), ("Substance", "peripheral")],
     [("bêbado", "a", ["bebado", "bêbada"]), ("alcoolizado", "a", ["alcoolizada"]),
      ("embriagado", "a", ["embriagada"])]),
    ("Self_harm", "An Agent harms their own body.", ["violence", "healthcare"],
     [("Agent", "core"), ("Body_part", "peripheral")],
     [("automutilação", "n", ["automutilacao"]), ("autoextermínio", "n", ["autoexterminio"]),
      ("suicídio", "n", ["suicidio"])]),
]

RELATIONS = [
    ("inchoative_of", "Experience_bodily_harm", "Being_hurt"),
    ("inheritance", "Experience_bodily_harm", "Undergoing"),
    ("use", "Cause_harm", "Experience_bodily_harm"),
    ("inheritance", "Cause_harm", "Transitive_action"),
    ("causative_of", "Cause_harm", "Being_hurt"),
    ("subframe", "Cause_harm", "Violence_scenario"),
    ("inheritance", "Attack", "Cause_harm"),
    ("inheritance", "Self_harm", "Cause_harm"),
    ("inheritance", "Abusing", "Transitive_action"),
    ("inheritance", "Rape", "Abusing"),
    ("inheritance", "Abandonment", "Transitive_action"),
    ("perspective_of", "Being_hurt", "Undergoing"),
    ("precedence", "Quarreling", "Cause_harm"),
    ("see_also", "Fear", "Risk_situation"),
    ("subframe", "Symptoms", "Healthcare_scenario"),
]

QUALIA = [
    ({"lemma": "faca", "pos": "n", "frame": "Weapon"},
     {"lemma": "cortar", "pos": "v", "frame": "Cutting"}, "Cutting", "telic"),
    ({"lemma": "corte", "pos": "n", "frame": "Cutting"},
     {"lemma": "faca", "pos": "n", "frame": "Weapon"}, "Weapon", "agentive"),
    ({"lemma": "ameaça", "pos": "n", "frame": "Risk_situation"},
     {"lemma": "medo", "pos": "n", "frame": "Fear"}, "Fear", "telic"),
]

PATTERNS = [
    {
        "id": "pat_physical_family",
        "name": "Physical violence by family member or person related to the victim",
        "scenario": "general_violence",
        "anchor": {"frames": ["Cause_harm"]},
        "roles": [{"role": "Agent", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "notes": "Harm-causing event whose Agent is a family member or acquaintance.",
    },
    {
        "id": "pat_injury_family",
        "name": "Injury by family member or person related to the victim",
        "scenario": "general_violence",
        "anchor": {"frames": ["Experience_bodily_harm"]},
        "roles": [{"role": "Injuring_entity", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "notes": "Victim-perspective counterpart of the agent-perspective physical-violence pattern.",
    },
    {
        "id": "pat_psy_domain",
        "name": "Psychological violence (domain-qualified harm)",
        "scenario": "psychological_violence",
        "anchor": {"frames": ["Domain"], "lus": [["psicológico", "a"]]},
        "roles": [
            {"role": "Predicate",
             "filler": {"frames": ["Experience_bodily_harm", "Cause_harm", "Violence_scenario"]}}
        ],
        "notes": "The qualifier restricts a harm/violence predicate to the psychological domain.",
    },
    {
        "id": "pat_psy_threat",
        "name": "Threat by family member or person related to the victim",
        "scenario": "psychological_violence",
        "anchor": {"frames": ["Risk_situation"], "lus": [["ameaça", "n"], ["ameaçar", "v"]]},
        "roles": [{"role": "Dangerous_entity", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "notes": "Threat vocabulary where the dangerous entity is a family member or acquaintance.",
    },
    {
        "id": "pat_psy_fear",
        "name": "Fear of family member or person related to the victim",
        "scenario": "psychological_violence",
        "anchor": {"frames": ["Fear"]},
        "roles": [{"role": "Stimulus", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "notes": "Fear whose stimulus is a family member or acquaintance.",
    },
    {
        "id": "pat_abandonment_child_elderly",
        "name": "Abandonment of child/elderly",
        "scenario": "negligence",
        "anchor": {"frames": ["Abandonment"]},
        "roles": [{"role": "Theme", "filler": {"frames": ["People_by_age"]}}],
        "reconstructed": True,
        "notes": "Reconstructed composition; only the published row name is documented.",
    },
    {
        "id": "pat_abuse_family",
        "name": "Abuse by family member or person related to the victim",
        "scenario": "general_violence",
        "anchor": {"frames": ["Abusing"]},
        "roles": [{"role": "Abuser", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "reconstructed": True,
        "notes": "Reconstructed composition; only the published row name is documented.",
    },
    {
        "id": "pat_abuse_child_elderly",
        "name": "Abuse of child/elderly",
        "scenario": "negligence",
        "anchor": {"frames": ["Abusing"]},
        "roles": [{"role": "Victim", "filler": {"frames": ["People_by_age"]}}],
        "reconstructed": True,
        "notes": "Reconstructed composition; only the published row name is documented.",
    },
    {
        "id": "pat_sexual_family",
        "name": "Sexual violence by family member or person related to the victim",
        "scenario": "sexual_violence",
        "anchor": {"frames": ["Rape"]},
        "roles": [{"role": "Perpetrator", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "reconstructed": True,
        "notes": "Reconstructed composition; only the published row name is documented.",
    },
    {
        "id": "pat_sexual_abuse",
        "name": "Sexual abuse",
        "scenario": "sexual_violence",
        "anchor": {
            "frames": ["Rape", "Abusing"],
            "lus": [["estuprar", "v"], ["estupro", "n"], ["violentar", "v"], ["abusar", "v"], ["abuso", "n"]],
        },
        "roles": [],
        "reconstructed": True,
        "notes": "Anchor-only pattern keyed on sexual-violence vocabulary.",
    },
    {
        "id": "pat_violence_family",
        "name": "Violence by family member or person related to the victim",
        "scenario": "general_violence",
        "anchor": {"frames": ["Violence_scenario"]},
        "roles": [{"role": "Aggressor", "filler": {"frames": ["Kinship", "Personal_relationship"]}}],
        "reconstructed": True,
        "notes": "Reconstructed composition; only the published row name is documented.",
    },
]

NO_SPACE_BEFORE = {".", ",", ";", ":", "!", "?"}


def lay_out(tokens):
    """Assign char offsets; punctuation attaches to the previous token."""
    out = []
    offset = 0
    for i, (surface, lemma, pos) in enumerate(tokens):
        if i > 0 and surface not in NO_SPACE_BEFORE:
            offset += 1
        out.append({"surface": surface, "lemma": lemma, "pos": pos, "start": offset, "end": offset + len(surface)})
        offset += len(surface)
    return out


SENTENCES = [
    {
        "doc_id": "demo", "sent_id": "s1", "field_tag": "S",
        "tokens": [
            ("Paciente", "paciente", "n"), ("relata", "relatar", "v"), ("que", "que", "other"),
            ("o", "o", "other"), ("marido", "marido", "n"), ("bate", "bater", "v"),
            ("nela", "ela", "other"), ("quando", "quando", "other"), ("fica", "ficar", "v"),
            ("nervoso", "nervoso", "a"), (".", ".", "other"),
        ],
        "sets": [
            {"frame": "Statement", "target": [1, 2],
             "fes": [{"role": "Speaker", "span": [0, 1]}, {"role": "Message", "span": [2, 10]}]},
            {"frame": "Cause_harm", "target": [5, 6],
             "fes": [{"role": "Agent", "span": [3, 5]}, {"role": "Victim", "span": [6, 7]}]},
            {"frame": "Personal_relationship", "target": [4, 5], "fes": []},
        ],
    },
    {
        "doc_id": "demo", "sent_id": "s2", "field_tag": "S",
        "tokens": [
            ("Paciente", "paciente", "n"), ("relata", "relatar", "v"), ("dor", "dor", "n"),
            ("no", "em", "other"), ("tórax", "tórax", "n"), ("associada", "associado", "a"),
            ("a", "a", "other"), ("estresse", "estresse", "n"), ("doméstico", "doméstico", "a"),
            (".", ".", "other"),
        ],
        "sets": [
            {"frame": "People_by_health_condition", "target": [0, 1], "fes": [{"role": "Patient", "span": [0, 1]}]},
            {"frame": "Statement", "target": [1, 2],
             "fes": [{"role": "Speaker", "span": [0, 1]}, {"role": "Message", "span": [2, 9]}]},
            {"frame": "Symptoms", "target": [2, 3],
             "fes": [{"role": "Patient", "span": [0, 1]}, {"role": "Body_part", "span": [3, 5]},
                     {"role": "Descriptor", "span": [5, 9]}]},
            {"frame": "Body_parts", "target": [4, 5], "fes": [{"role": "Body_part", "span": [4, 5]}]},
            {"frame": "Cognitive_connection", "target": [5, 6],
             "fes": [{"role": "Concept_1", "span": [2, 5]}, {"role": "Concept_2", "span": [6, 9]}]},
            {"frame": "Emotion_directed", "target": [7, 8], "fes": [{"role": "Reason", "span": [8, 9]}]},
        ],
    },
    {
        "doc_id": "demo", "sent_id": "s3", "field_tag": "A",
        "tokens": [
            ("Criança", "criança", "n"), ("foi", "ser", "v"), ("abandonada", "abandonar", "v"),
            ("pela", "por", "other"), ("mãe", "mãe", "n"), ("na", "em", "other"),
            ("escola", "escola", "n"), (".", ".", "other"),
        ],
        "sets": [
            {"frame": "People_by_age", "target": [0, 1], "fes": [{"role": "Person", "span": [0, 1]}]},
            {"frame": "Abandonment", "target": [2, 3],
             "fes": [{"role": "Theme", "span": [0, 1]}, {"role": "Agent", "span": [3, 5]},
                     {"role": "Place", "span": [5, 7]}]},
            {"frame": "Kinship", "target": [4, 5], "fes": [{"role": "Alter", "span": [4, 5]}]},
            {"frame": "Institutions", "target": [6, 7], "fes": [{"role": "Institution", "span": [6, 7]}]},
        ],
    },
    {
        "doc_id": "demo", "sent_id": "s4", "field_tag": "S",
        "tokens": [
            ("Paciente", "paciente", "n"), ("tem", "ter", "v"), ("medo", "medo", "n"),
            ("do", "de", "other"), ("companheiro", "companheiro", "n"), (".", ".", "other"),
        ],
        "sets": [
            {"frame": "People_by_health_condition", "target": [0, 1], "fes": [{"role": "Patient", "span": [0, 1]}]},
            {"frame": "Fear", "target": [2, 3],
             "fes": [{"role": "Experiencer", "span": [0, 1]}, {"role": "Stimulus", "span": [3, 5]}]},
            {"frame": "Personal_relationship", "target": [4, 5], "fes": [{"role": "Partner_1", "span": [4, 5]}]},
        ],
    },
    {
        "doc_id": "demo", "sent_id": "s5", "field_tag": "S",
        "tokens": [
            ("Relata", "relatar", "v"), ("ameaça", "ameaça", "n"), ("de", "de", "other"),
            ("morte", "morte", "n"), ("pelo", "por", "other"), ("ex-marido", "ex-marido", "n"),
            (".", ".", "other"),
        ],
        "sets": [
            {"frame": "Statement", "target": [0, 1], "fes": [{"role": "Message", "span": [1, 6]}]},
            {"frame": "Risk_situation", "target": [1, 2],
             "fes": [{"role": "Situation", "span": [2, 4]}, {"role": "Dangerous_entity", "span": [4, 6]}]},
            {"frame": "Personal_relationship", "target": [5, 6], "fes": [{"role": "Partner_1", "span": [5, 6]}]},
        ],
    },
    {
        "doc_id": "demo", "sent_id": "s6", "field_tag": "O",
        "tokens": [
            ("Nega", "negar", "v"), ("uso", "uso", "n"), ("de", "de", "other"),
            ("medicamento", "medicamento", "n"), (".", ".", "other"),
        ],
        "sets": [
            {"frame": "Statement", "target": [0, 1], "fes": [{"role": "Message", "span": [1, 4]}]},
            {"frame": "Medication", "target": [3, 4], "fes": [{"role": "Medication", "span": [3, 4]}]},
        ],
    },
]


def main():
    DATA_DIR.mkdir(parents=True, exist_ok=True)

    store_path = DATA_DIR / "frame_store.jsonl"
    with open(store_path, "w", encoding="utf-8") as fh:
        for name, definition, tags, fes, lus in FRAMES:
            fh.write(json.dumps({"kind": "frame", "name": name, "definition": definition,
                                 "domain_tags": tags}, ensure_ascii=False) + "\n")
            for fe_name, coreness in fes:
                fh.write(json.dumps({"kind": "frame_element", "frame": name, "name": fe_name,
                                     "definition": f"The {fe_name} of the {name} scene.",
                                     "coreness": coreness}, ensure_ascii=False) + "\n")
            for lemma, pos, forms in lus:
                fh.write(json.dumps({"kind": "lexical_unit", "lemma": lemma, "pos": pos, "frame": name,
                                     "word_forms": sorted(set(forms) | {lemma})}, ensure_ascii=False) + "\n")
        for rel_type, source, target in RELATIONS:
            fh.write(json.dumps({"kind": "frame_relation", "type": rel_type, "source": source,
                                 "target": target}, ensure_ascii=False) + "\n")
        for source, target, frame, quale in QUALIA:
            fh.write(json.dumps({"kind": "qualia_relation", "source": source, "target": target,
                                 "frame": frame, "quale": quale}, ensure_ascii=False) + "\n")

    with open(DATA_DIR / "patterns.jsonl", "w", encoding="utf-8") as fh:
        for pattern in PATTERNS:
            fh.write(json.dumps(pattern, ensure_ascii=False) + "\n")

    with open(DATA_DIR / "sample_corpus.jsonl", "w", encoding="utf-8") as fh:
        for sentence in SENTENCES:
            record = dict(sentence)
            record["tokens"] = lay_out(sentence["tokens"])
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    print(f"wrote {store_path.parent}")


if __name__ == "__main__":
    main()
