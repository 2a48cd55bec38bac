"""Shared data model: segments, morphemes, person markers, feature bundles."""
from __future__ import annotations

import csv
import unicodedata
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional

VOWELS = frozenset("aeêiîouû")
LONG_VOWELS = frozenset("aêîoû")
ROUNDED = frozenset("ouû")
SEMIVOWELS = frozenset("yw")


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def segments(text: str) -> list[str]:
    """Split a Latin-script string into segments, keeping combining marks attached."""
    return list(_segments(text))


@lru_cache(maxsize=4096)
def _segments(text: str) -> tuple[str, ...]:
    out: list[str] = []
    for ch in nfc(text):
        if out and unicodedata.combining(ch):
            out[-1] += ch
        else:
            out.append(ch)
    return tuple(out)


def is_vowel(seg: str) -> bool:
    return seg in VOWELS


def is_consonant(seg: str) -> bool:
    return (seg.isalpha() and seg not in VOWELS) or seg == "'"


KINDS = frozenset(
    {
        "root",
        "inflectional-prefix",
        "inflectional-suffix",
        "derivational-prefix",
        "derivational-suffix",
        "proclitic",
        "enclitic",
        "endoclitic",
    }
)


@dataclass(frozen=True)
class Morpheme:
    form: str
    kind: str
    gloss: str
    id: Optional[str] = None
    series: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown morpheme kind {self.kind!r}")
        if not self.form and not self.gloss:
            raise ValueError("an empty morpheme must carry a gloss")
        object.__setattr__(self, "form", nfc(self.form))

    @property
    def empty(self) -> bool:
        return self.form == ""

    @property
    def is_clitic(self) -> bool:
        return self.kind in ("enclitic", "endoclitic", "proclitic")


@dataclass(frozen=True, order=True)
class PersonNumber:
    person: int
    number: str

    def __post_init__(self):
        if self.person not in (1, 2, 3) or self.number not in ("SG", "PL"):
            raise ValueError(f"bad person/number {self.person}{self.number}")

    def __str__(self) -> str:
        return f"{self.person}{self.number}"

    @classmethod
    def parse(cls, text: str) -> "PersonNumber":
        t = text.strip().upper()
        if len(t) != 3 or not t[0].isdigit():
            raise ValueError(f"bad person/number {text!r}")
        return cls(int(t[0]), t[1:])


PERSONS = tuple(PersonNumber(p, n) for n in ("SG", "PL") for p in (1, 2, 3))


@dataclass(frozen=True)
class MarkerParadigm:
    """One person-marker series. Cells hold variants, short form first."""

    series: str
    cells: dict

    def forms(self, pn: PersonNumber) -> tuple[str, ...]:
        return self.cells.get(pn, ())


def _paradigm(series: str, *rows: tuple[str, ...]) -> MarkerParadigm:
    return MarkerParadigm(series, {pn: r for pn, r in zip(PERSONS, rows) if r})


PARADIGMS = {
    "COP": _paradigm("COP", ("im",), ("î", "ît"), ("e",), ("în",), ("in",), ("in",)),
    "PM1": _paradigm("PM1", ("im",), ("î", "ît"), ("ê", "êt"), ("în",), ("in",), ("in",)),
    "PM2": _paradigm("PM2", (), ("e",), (), (), ("in",), ()),
    "PM3": _paradigm("PM3", ("im",), ("î", "ît"), ("",), ("în",), ("in",), ("in",)),
    "PM4": _paradigm("PM4", ("im",), ("it",), ("î",), ("man",), ("tan",), ("yan",)),
}


def marker_forms(series: str, pn: PersonNumber) -> tuple[str, ...]:
    try:
        return PARADIGMS[series].forms(pn)
    except KeyError:
        raise ValueError(f"unknown marker series {series!r}") from None


def reverse_lookup(series: str, form: str) -> set[PersonNumber]:
    """All person/number cells of a series realized by form ('' for zero)."""
    par = PARADIGMS[series]
    form = nfc(form)
    return {pn for pn, forms in par.cells.items() if form in forms}


@dataclass(frozen=True)
class Construction:
    id: str
    transitive: Optional[bool]
    stem: str
    moods: tuple
    finite: bool = True


CONSTRUCTIONS = {
    c.id: c
    for c in (
        Construction("infinitive", None, "past", (None,), finite=False),
        Construction("simple-past-intr", False, "past", ("IND",)),
        Construction("simple-past-tr", True, "past", ("IND",)),
        Construction("perfect-participle", None, "past", (None,), finite=False),
        Construction("present-perfect-intr", False, "past", ("IND",)),
        Construction("present-perfect-tr", True, "past", ("IND",)),
        Construction("past-perfect-or-subj-intr", False, "past", ("IND", "SBJV")),
        Construction("past-perfect-or-subj-tr", True, "past", ("IND", "SBJV")),
        Construction("past-progressive-intr", False, "past", ("IND",)),
        Construction("past-progressive-tr", True, "past", ("IND",)),
        Construction("past-conditional-intr", False, "past", ("COND",)),
        Construction("past-conditional-tr", True, "past", ("COND",)),
        Construction("present-intr", False, "present", ("IND", "SBJV", "IMP")),
        Construction("present-tr", True, "present", ("IND", "SBJV", "IMP")),
    )
}
CONSTRUCTION_ORDER = tuple(CONSTRUCTIONS)
MOODS = ("IND", "SBJV", "IMP", "COND")
POS = ("verb", "noun", "adjective", "adverb")
VOICES = ("active", "passive")
NEGATION_FLAVORS = ("ne", "na", "me")


class FeatureError(ValueError):
    """Raised for an inconsistent feature bundle."""


@dataclass(frozen=True)
class FeatureBundle:
    construction: Optional[str] = None
    mood: Optional[str] = None
    agent: Optional[PersonNumber] = None
    patient: Optional[PersonNumber] = None
    negation: bool = False
    directional: bool = False
    repetition: bool = False
    voice: str = "active"
    pos: str = "verb"
    negation_flavor: Optional[str] = None

    def __post_init__(self):
        for name in ("agent", "patient"):
            v = getattr(self, name)
            if isinstance(v, str):
                object.__setattr__(self, name, PersonNumber.parse(v))
        if self.negation_flavor is not None and not self.negation:
            object.__setattr__(self, "negation", True)

    def derived_negation(self) -> Optional[str]:
        """The negation prefix this bundle calls for, or None if affirmative."""
        if not self.negation:
            return None
        if self.mood == "IMP":
            # passives borrow the subjunctive for their imperative
            return "ne" if self.voice == "passive" else "me"
        if self.construction in ("present-intr", "present-tr") and self.mood == "IND":
            return "na"
        return "ne"

    def resolved(self) -> "FeatureBundle":
        """Fill the default mood and drop the redundant negation flavor."""
        c = CONSTRUCTIONS.get(self.construction)
        mood = self.mood
        if c is not None and mood is None:
            mood = c.moods[0]
        if mood == self.mood and self.negation_flavor is None:
            return self
        return replace(self, mood=mood, negation_flavor=None)

    def sort_key(self) -> tuple:
        order = {c: i for i, c in enumerate(CONSTRUCTION_ORDER)}
        mood_order = {m: i for i, m in enumerate((None,) + MOODS)}
        pn = lambda x: -1 if x is None else PERSONS.index(x)
        return (
            order.get(self.construction, 99),
            mood_order.get(self.mood, 9),
            pn(self.agent),
            pn(self.patient),
            self.negation,
            self.directional,
            self.repetition,
            self.voice,
        )

    def describe(self) -> str:
        """Compact key=value rendering, parseable by parse_features."""
        parts = [self.construction or "-"]
        if self.mood:
            parts.append(f"mood={self.mood}")
        if self.agent:
            parts.append(f"agent={self.agent}")
        if self.patient:
            parts.append(f"patient={self.patient}")
        for flag in ("negation", "directional", "repetition"):
            if getattr(self, flag):
                parts.append(f"{flag}=yes")
        if self.voice != "active":
            parts.append(f"voice={self.voice}")
        return " ".join(parts)


_TRUE = {"1", "yes", "true", "y", "on"}
_FALSE = {"0", "no", "false", "n", "off"}


def parse_features(construction: str, pairs: Iterable[str]) -> FeatureBundle:
    """Build a bundle from a construction id and key=value tokens."""
    kw: dict = {"construction": construction}
    for tok in pairs:
        if "=" not in tok:
            raise FeatureError(f"expected key=value, got {tok!r}")
        key, val = tok.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        val = val.strip()
        if key in ("agent", "patient"):
            try:
                kw[key] = PersonNumber.parse(val)
            except ValueError as exc:
                raise FeatureError(str(exc)) from None
        elif key in ("negation", "directional", "repetition"):
            if val.lower() not in _TRUE | _FALSE:
                raise FeatureError(f"{key} expects yes/no, got {val!r}")
            kw[key] = val.lower() in _TRUE
        elif key == "mood":
            kw[key] = val.upper()
        elif key in ("voice", "pos", "negation_flavor"):
            kw[key] = val.lower()
        else:
            raise FeatureError(f"unknown feature {key!r}")
    try:
        return FeatureBundle(**kw)
    except ValueError as exc:
        raise FeatureError(str(exc)) from None


def validate_features(f: FeatureBundle) -> list[str]:
    """Return the list of violated constraints; empty means consistent."""
    errs: list[str] = []
    if f.pos not in POS:
        errs.append(f"unknown part of speech {f.pos!r}")
    if f.pos != "verb":
        if f.construction or f.agent or f.patient or f.mood:
            errs.append("verbal features on a non-verb")
        return errs
    c = CONSTRUCTIONS.get(f.construction)
    if c is None:
        return errs + [f"unknown construction {f.construction!r}"]
    if f.voice not in VOICES:
        errs.append(f"unknown voice {f.voice!r}")
    if f.mood is not None and f.mood not in c.moods:
        errs.append(f"mood {f.mood} not available for {c.id}")
    if c.finite and f.agent is None:
        errs.append("finite construction requires an agent")
    if not c.finite and f.agent is not None:
        errs.append(f"{c.id} takes no agent")
    if f.patient is not None and not c.transitive:
        errs.append(f"patient on non-transitive construction {c.id}")
    if c.transitive and c.stem == "past" and f.patient is None:
        errs.append(f"{c.id} requires a patient")
    mood = f.mood or c.moods[0]
    if mood == "IMP" and f.agent is not None and f.agent.person != 2:
        errs.append("imperative requires a second-person agent")
    if f.voice == "passive" and c.transitive:
        errs.append("passive voice on a transitive construction")
    if c.id == "perfect-participle" and (f.directional or f.repetition):
        errs.append("participle takes no directional or repetition marker")
    if c.id == "infinitive" and f.directional:
        errs.append("infinitive takes no directional marker")
    if f.negation_flavor is not None:
        if f.negation_flavor not in NEGATION_FLAVORS:
            errs.append(f"unknown negation flavor {f.negation_flavor!r}")
        else:
            want = replace(f, mood=mood).derived_negation()
            if want != f.negation_flavor:
                errs.append(f"negation flavor {f.negation_flavor} conflicts with derived {want}")
    return errs


BOUNDARY = "·"
CLITIC_GLOSSES = ("DIR", "EMPH")


@dataclass(frozen=True)
class MorphemeSequence:
    """Ordered morphemes plus the span of the stem group.

    core_end marks the end of the stem together with any auxiliaries;
    a postverbal agent marker is placed there.
    """

    items: tuple
    stem_start: int = 0
    stem_end: int = 1
    core_end: Optional[int] = None
    pos: str = "verb"
    stem_tense: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if self.core_end is None:
            object.__setattr__(self, "core_end", self.stem_end)
        if not 0 <= self.stem_start <= self.stem_end <= self.core_end <= len(self.items):
            raise ValueError("inconsistent stem span")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def in_stem(self, i: int) -> bool:
        return self.stem_start <= i < self.stem_end

    def forms(self, keep_empty: bool = False) -> list[str]:
        return [m.form for m in self.items if keep_empty or m.form]

    def underlying(self) -> str:
        """Non-empty forms joined with the boundary symbol."""
        return BOUNDARY.join(self.forms())

    def stem_joined(self) -> list[str]:
        """Non-empty forms with the stem group fused into one piece."""
        out: list[str] = []
        for i, m in enumerate(self.items):
            if i == self.stem_start:
                out.append("".join(x.form for x in self.items[self.stem_start : self.stem_end]))
            elif not self.in_stem(i) and m.form:
                out.append(m.form)
        return [x for x in out if x]

    def insert(self, index: int, morph: Morpheme) -> "MorphemeSequence":
        items = list(self.items)
        items.insert(index, morph)
        bump = lambda k: k + 1 if index < k or (index == k and index <= self.stem_start) else k
        start = self.stem_start + (1 if index <= self.stem_start else 0)
        end, core = bump(self.stem_end), bump(self.core_end)
        return MorphemeSequence(tuple(items), start, end, core, self.pos, self.stem_tense)

    def append(self, *morphs: Morpheme) -> "MorphemeSequence":
        return MorphemeSequence(self.items + morphs, self.stem_start, self.stem_end, self.core_end, self.pos, self.stem_tense)


@dataclass(frozen=True)
class InventoryEntry:
    id: str
    latin: str
    arabic: str
    kind: str
    gloss: str
    notes: str = ""


@lru_cache(maxsize=1)
def load_inventory() -> dict[str, InventoryEntry]:
    """The bound-morpheme inventory keyed by id."""
    text = resources.files("sorani").joinpath("data/inventory.tsv").read_text(encoding="utf-8")
    rows = csv.DictReader(text.splitlines(), delimiter="\t")
    out: dict[str, InventoryEntry] = {}
    for row in rows:
        e = InventoryEntry(**{k: nfc(v or "") for k, v in row.items()})
        if e.id in out:
            raise ValueError(f"duplicate inventory id {e.id!r}")
        out[e.id] = e
    return out
