"""Loading and evaluating the gold fixture; shared by the unit and acceptance tests."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional

from sorani.analyzer import Analyzer
from sorani.core import FeatureBundle, MorphemeSequence
from sorani.lexicon import derive_passive_stems, derive_past_stem, seed_lexicon
from sorani.nominal import (
    IzafaLink,
    NominalFeatures,
    NounState,
    analyze_degree,
    analyze_izafa,
    attach_izafa,
    grade,
    inflect_noun,
)
from sorani.phonology import realize
from sorani.verbs import GenerationOptions, generate_verb

GOLD_PATH = Path(__file__).parent / "fixtures" / "gold.json"


@lru_cache(maxsize=None)
def gold() -> dict:
    return json.loads(GOLD_PATH.read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def analyzer() -> Analyzer:
    return Analyzer(seed_lexicon())


def bundle(item: dict) -> FeatureBundle:
    return FeatureBundle(item["construction"], **item["features"])


def options(item: dict) -> GenerationOptions:
    return GenerationOptions(**item.get("options", {}))


def nominal_features(item: dict) -> NominalFeatures:
    return NominalFeatures(**item["features"])


def verb_items() -> list[dict]:
    g = gold()
    out = g["rule7"] + g["example_5_1"] + g["appendix_b"]
    out += [dict(x, source=f"Rule {x['rule']}") for x in g["phonology"] if x["kind"] == "verb"]
    return out


def nominal_items() -> list[dict]:
    g = gold()
    return g["nominal"] + [dict(x, source=f"Rule {x['rule']}") for x in g["phonology"] if x["kind"] == "nominal"]


def izafa_items() -> list[dict]:
    g = gold()
    return g["izafa"] + [dict(x, source=f"Rule {x['rule']}") for x in g["phonology"] if x["kind"] == "izafa"]


def verb_sequence(item: dict) -> MorphemeSequence:
    return generate_verb(seed_lexicon().get(item["lemma"]), bundle(item), options(item))


def nominal_sequence(item: dict) -> MorphemeSequence:
    lex = seed_lexicon().get(item["lemma"])
    return inflect_noun(lex.lemma, nominal_features(item), lex.pos)


def izafa_head(item: dict) -> NounState:
    lex = seed_lexicon().get(item["head"])
    return NounState(lex.lemma, NominalFeatures(**item["head_features"]), lex.pos, item.get("pre"))


def verb_analysed(item: dict) -> bool:
    want = bundle(item).resolved()
    return any(
        a.lemma == item["lemma"] and isinstance(a.features, FeatureBundle) and a.features.resolved() == want
        for a in analyzer().analyze(item["surface"])
    )


def nominal_analysed(item: dict) -> bool:
    want = nominal_features(item)
    return any(a.lemma == item["lemma"] and a.features == want for a in analyzer().analyze(item["surface"]))


def izafa_analysed(item: dict) -> bool:
    head = izafa_head(item)
    link = IzafaLink(item["link"])
    return any(
        (r.head, r.dependent, r.link) == (head, item["dependent"], link) for r in analyze_izafa(item["surface"])
    )


def table4_morphs(seq: MorphemeSequence) -> list[str]:
    """Morph forms with the stem group joined and empty markers dropped, as the placement table lays them out."""
    items = seq.items
    stem = "".join(m.form for m in items[seq.stem_start:seq.stem_end])
    forms = [m.form for m in items[: seq.stem_start]] + [stem] + [m.form for m in items[seq.stem_end:]]
    return [f for f in forms if f]


@dataclass
class Outcome:
    category: str
    source: str
    surface: str
    generated: Optional[str]
    analysed: bool
    conflict: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.generated == self.surface and self.analysed


def evaluate() -> list[Outcome]:
    """Both directions for every gold entry."""
    g = gold()
    lex = seed_lexicon()
    out = []
    for item in verb_items():
        got = realize(verb_sequence(item)).surface
        out.append(Outcome("verb", item["source"], item["surface"], got, verb_analysed(item), item.get("conflict")))
    for item in nominal_items():
        got = realize(nominal_sequence(item)).surface
        out.append(Outcome("nominal", item["source"], item["surface"], got, nominal_analysed(item)))
    for item in g["analysis_only"]:
        out.append(Outcome("analysis-only", f"Rule {item['rule']}", item["surface"], item["surface"], nominal_analysed(item)))
    for item in izafa_items():
        got = attach_izafa(izafa_head(item), item["dependent"], IzafaLink(item["link"]))
        out.append(Outcome("izafa", item["source"], item["surface"], got, izafa_analysed(item)))
    for item in g["degree"]:
        got = grade(item["base"], item["degree"])
        found = any((d.base, d.degree) == (item["base"], item["degree"]) for d in analyze_degree(item["surface"]))
        out.append(Outcome("degree", item["source"], item["surface"], got, found))
    for item in g["table4"]:
        if "past_stem" in item:
            got = lex.get(item["lemma"]).past_stem
            found = derive_past_stem(item["lemma"]) == item["past_stem"]
            out.append(Outcome("table4", "Table 4 row 0", item["past_stem"], got, found))
            continue
        seq = generate_verb(lex.get(item["lemma"]), bundle(item))
        want = " ".join(item["morphs"])
        surface = realize(seq).surface
        found = verb_analysed(dict(item, surface=surface))
        out.append(Outcome("table4", f"Table 4 row {item['row']}", want, " ".join(table4_morphs(seq)), found))
    for item in g["table9"]:
        x = lex.get(item["lemma"])
        stems = f"{x.past_stem} {x.present_stem}"
        want = f"{item['past_stem']} {item['present_stem']}"
        found = item["root"] in x.root and derive_past_stem(item["lemma"]) == item["past_stem"]
        active = g["table9_passive_of"].get(item["lemma"])
        if active and "PASS" not in lex.get(active).irregulars:
            found = found and derive_passive_stems(lex.get(active)) == (item["past_stem"], item["present_stem"])
        out.append(Outcome("table9", f"Table 9 {item['printed']}", want, stems, found))
    return out
