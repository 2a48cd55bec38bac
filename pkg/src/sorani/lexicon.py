"""Lexeme entries, stem derivation and the seed lexicon."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, TextIO, Union

from .core import BOUNDARY, VOWELS, Morpheme, MorphemeSequence, nfc, segments
from .phonology import surface

PAST_SUFFIXES = ("", "a", "and", "ard", "d", "ê", "î", "îşt", "îrd", "ird", "t", "û", "y")
PRESENT_SUFFIXES = ("", "e", "ê", "ên", "êr")
PASSIVE_PAST, PASSIVE_PRESENT = "dira", "dirê"

# preverbal particles
PARTICLES = {
    "ber": "ahead", "da": "down", "der": "out", "hel": "up",
    "ser": "over", "řa": "towards", "řo": "above", "wer": "upside",
}
# adpositions: simple, absolute, gloss
ADPOSITIONS = (
    ("be", "pê", "with"), ("bê", None, "without"), ("bo", "bo", "to"),
    ("de", "tê", "at"), ("le", "lê", "from"), ("legel", "legel", "with"),
    ("degel", "degel", "with"), ("letek", "letek", "with"), ("ře", None, "with"),
    ("we", "wê", "to"),
)
POSTPOSITIONS = (("da", "in"), ("a", "in"), ("řa", "from"), ("ewe", "from"))
# reciprocals: simple, absolute, gloss
RECIPROCALS = (
    ("le yek", "lêk", "from each other"), ("be yek", "pêk", "to each other"),
    ("de yek", "têk", "in each other"), ("we yek", "wêk", "to each other"),
)
# pronouns (southern): independent, affixed
PRONOUNS_SOUTHERN = {
    "1SG": ("min", "im"), "2SG": ("to", "it"), "3SG": ("ew", "î"),
    "1PL": ("ême", "man"), "2PL": ("êwe", "tan"), "3PL": ("ewan", "yan"),
}
# pronouns (northern): nominative, other cases
PRONOUNS_NORTHERN = {
    "1SG": (("emin",), ("min",)), "2SG": (("eto",), ("to",)), "3SG": (("ew",), ("wî",)),
    "1PL": (("ême", "eme"), ("me",)), "2PL": (("engo",), ("ingo",)), "3PL": (("ewan",), ("wan",)),
}

ABSOLUTE_ADPOSITIONS = tuple(dict.fromkeys(a for _, a, _ in ADPOSITIONS if a))
DP1 = frozenset(PARTICLES) | frozenset(ABSOLUTE_ADPOSITIONS) | frozenset(r for _, r, _ in RECIPROCALS)

TRANSITIVITY = ("transitive", "intransitive")
NOMINAL_POS = ("noun", "adjective", "adverb")
IRREGULAR_SLOTS = ("IMP.2SG", "IMP.2PL", "PASS")


class LexiconError(ValueError):
    def __init__(self, row: int, col: int, message: str):
        super().__init__(f"{row}:{col}: {message}")
        self.row, self.col, self.message = row, col, message


class IrregularPassiveError(ValueError):
    """The lexeme lists its passive in the irregulars map."""


def _stem_seq(root: str, suffix: str, tense: str, gloss: str = "ROOT") -> MorphemeSequence:
    tag = "PSTSTEM" if tense == "past" else "PRSSTEM"
    items = [Morpheme(root, "root", gloss), Morpheme(suffix, "derivational-suffix", tag, id=suffix or "∅")]
    return MorphemeSequence(items, 0, 2, stem_tense=tense)


def decompose_stem(stem: str, tense: str) -> list[tuple[str, str]]:
    """Every split stem = root + suffix with the suffix in the inventory, longest suffix first.

    The zero suffix is written '∅'.
    """
    if tense not in ("past", "present"):
        raise ValueError(f"tense must be past or present, got {tense!r}")
    stem = nfc(stem)
    inv = PAST_SUFFIXES if tense == "past" else PRESENT_SUFFIXES
    out = [
        (stem[: len(stem) - len(s)], s or "∅")
        for s in sorted(inv, key=len, reverse=True)
        if stem.endswith(s) and len(s) < len(stem)
    ]
    return out


@lru_cache(maxsize=4096)
def realized_splits(stem: str, tense: str, roots: tuple) -> list[tuple[str, str]]:
    """Splits (root, suffix) whose phonological realization gives stem.

    Ordered by root alternate, then plain concatenations before splits
    that need an alternation, then longest suffix.
    """
    inv = PAST_SUFFIXES if tense == "past" else PRESENT_SUFFIXES
    found = []
    for ri, r in enumerate(roots):
        for s in inv:
            if surface(_stem_seq(r, s, tense)) == stem:
                found.append(((ri, r + s != stem, -len(s)), (r, s)))
    return [split for _, split in sorted(found)]


def derive_past_stem(infinitive: str) -> str:
    """Strip the infinitive -in (its i elides after a vowel)."""
    inf = nfc(infinitive.strip())
    segs = segments(inf)
    if len(segs) >= 3 and segs[-2:] == ["i", "n"] and segs[-3] not in VOWELS:
        stem = "".join(segs[:-2])
    elif len(segs) >= 2 and segs[-1] == "n" and segs[-2] in VOWELS and segs[-2] != "i":
        stem = "".join(segs[:-1])
    else:
        raise ValueError(f"{infinitive!r} is not a stem + -in infinitive")
    seq = MorphemeSequence([Morpheme(stem, "root", "STEM"), Morpheme("in", "inflectional-suffix", "INF", id="in")], 0, 1)
    if surface(seq) != inf:
        raise ValueError(f"{infinitive!r} is not a stem + -in infinitive")
    return stem


def derive_passive_stems(present: Union[str, "Lexeme"]) -> tuple[str, str]:
    """Past and present passive stems: present stem + dira / dirê."""
    if isinstance(present, Lexeme):
        if "PASS" in present.irregulars:
            raise IrregularPassiveError(f"{present.lemma} has an irregular passive: {present.irregulars['PASS'][0]}")
        if present.transitivity != "transitive":
            raise ValueError(f"{present.lemma} is not transitive")
        present = present.present_stem
    stem = nfc(present)
    if not stem:
        raise ValueError("empty present stem")
    return stem + PASSIVE_PAST, stem + PASSIVE_PRESENT


@dataclass(frozen=True)
class Lexeme:
    lemma: str
    root: tuple
    past_stem: Optional[str]
    present_stem: Optional[str]
    transitivity: str
    voice: str = "active"
    particle: Optional[str] = None
    irregulars: dict = field(default_factory=dict, hash=False, compare=False)
    gloss: str = ""
    derived_ewe: bool = False

    @property
    def pos(self) -> str:
        return "verb" if self.transitivity in TRANSITIVITY else self.transitivity

    @property
    def is_verb(self) -> bool:
        return self.pos == "verb"

    @property
    def transitive(self) -> bool:
        return self.transitivity == "transitive"

    @property
    def meaning(self) -> str:
        return self.gloss or self.lemma

    def stem(self, tense: str) -> str:
        return self.past_stem if tense == "past" else self.present_stem

    def stem_morphs(self, tense: str) -> list[Morpheme]:
        """The stem as root + derivational suffix (passive: base + dira/dirê)."""
        stem = self.stem(tense)
        if self.voice == "passive":
            suffix = PASSIVE_PAST if tense == "past" else PASSIVE_PRESENT
            base = stem[: -len(suffix)]
            tag = "PASS.PST" if tense == "past" else "PASS.PRS"
            return [Morpheme(base, "root", self.meaning), Morpheme(suffix, "derivational-suffix", tag, id=suffix)]
        splits = realized_splits(stem, tense, tuple(self.root))
        root, suffix = splits[0] if splits else (stem, "")
        tag = "PSTSTEM" if tense == "past" else "PRSSTEM"
        return [Morpheme(root, "root", self.meaning), Morpheme(suffix, "derivational-suffix", tag, id=suffix or "∅")]

    def particle_morph(self) -> Optional[Morpheme]:
        if not self.particle:
            return None
        gloss = PARTICLES.get(self.particle, self.particle)
        return Morpheme(self.particle, "derivational-prefix", gloss, id=self.particle + "-")


def _infinitive(lex: Lexeme, ewe: bool) -> str:
    items = []
    if lex.particle:
        items.append(lex.particle_morph())
    start = len(items)
    items += lex.stem_morphs("past")
    end = len(items)
    items.append(Morpheme("in", "inflectional-suffix", "INF", id="in"))
    if ewe:
        items.append(Morpheme("ewe", "derivational-suffix", "DER", id="ewe"))
    return surface(MorphemeSequence(items, start, end, stem_tense="past"))


def _parse_irregulars(text: str, row: int) -> dict:
    out: dict = {}
    for pair in filter(None, (p.strip() for p in text.split(";"))):
        if "=" not in pair:
            raise LexiconError(row, 7, f"irregular entry {pair!r} is not slot=form")
        slot, forms = (x.strip() for x in pair.split("=", 1))
        if slot not in IRREGULAR_SLOTS:
            raise LexiconError(row, 7, f"unknown irregular slot {slot!r}")
        out[slot] = tuple(nfc(f) for f in forms.split("|") if f)
    return out


def _cell(cols: list[str], i: int) -> str:
    v = cols[i].strip() if i < len(cols) else ""
    return "" if v == "-" else nfc(v)


def build_lexeme(cols: list[str], row: int) -> Lexeme:
    """Validate one row and build its lexeme; errors carry row and column."""
    if len(cols) < 5:
        raise LexiconError(row, len(cols) + 1, f"expected at least 5 columns, got {len(cols)}")
    lemma, root, past, present, trans = (_cell(cols, i) for i in range(5))
    particle, irr, voice, gloss = (_cell(cols, i) for i in range(5, 9))
    voice = voice or "active"
    if not lemma:
        raise LexiconError(row, 1, "empty lemma")
    if not root:
        raise LexiconError(row, 2, "empty root")
    roots = tuple(r.strip() for r in root.split("/") if r.strip())
    if trans in NOMINAL_POS:
        return Lexeme(lemma, roots, None, None, trans, gloss=gloss)
    if trans not in TRANSITIVITY:
        raise LexiconError(row, 5, f"transitivity must be transitive or intransitive, got {trans!r}")
    if voice not in ("active", "passive"):
        raise LexiconError(row, 8, f"voice must be active or passive, got {voice!r}")
    if particle and particle not in DP1:
        raise LexiconError(row, 6, f"particle {particle!r} is not a derivational prefix")
    if not past:
        raise LexiconError(row, 3, "empty past stem")
    if not present:
        raise LexiconError(row, 4, "empty present stem")
    irregulars = _parse_irregulars(irr, row)
    if voice == "passive":
        if trans != "intransitive":
            raise LexiconError(row, 5, "a passive lexeme is intransitive")
        if not past.endswith(PASSIVE_PAST) or len(past) <= len(PASSIVE_PAST):
            raise LexiconError(row, 3, f"passive past stem must end in -{PASSIVE_PAST}")
        if not present.endswith(PASSIVE_PRESENT) or len(present) <= len(PASSIVE_PRESENT):
            raise LexiconError(row, 4, f"passive present stem must end in -{PASSIVE_PRESENT}")
        base = past[: -len(PASSIVE_PAST)]
        if base != present[: -len(PASSIVE_PRESENT)]:
            raise LexiconError(row, 4, "passive stems do not share a base")
        if not any(base.startswith(r) for r in roots):
            raise LexiconError(row, 2, f"root does not begin the passive base {base!r}")
    else:
        if not realized_splits(past, "past", roots):
            raise LexiconError(row, 3, f"past stem {past!r} is not root + a past stem suffix")
        if not realized_splits(present, "present", roots):
            raise LexiconError(row, 4, f"present stem {present!r} is not root + a present stem suffix")
    lex = Lexeme(lemma, roots, past, present, trans, voice, particle or None, irregulars, gloss)
    if _infinitive(lex, False) == lemma:
        return lex
    if _infinitive(lex, True) == lemma:
        return Lexeme(lemma, roots, past, present, trans, voice, particle or None, irregulars, gloss, derived_ewe=True)
    raise LexiconError(row, 1, f"lemma {lemma!r} does not match past stem {past!r} + -in")


class Lexicon:
    """Lexemes indexed by lemma, past stem and present stem."""

    def __init__(self, entries: Iterable[Lexeme] = ()):
        self._by_lemma: dict[str, Lexeme] = {}
        self._by_past: dict[str, list[Lexeme]] = {}
        self._by_present: dict[str, list[Lexeme]] = {}
        for lex in entries:
            self.add(lex)

    def add(self, lex: Lexeme) -> None:
        if lex.lemma in self._by_lemma:
            raise ValueError(f"duplicate lemma {lex.lemma!r}")
        self._by_lemma[lex.lemma] = lex
        if lex.is_verb:
            self._by_past.setdefault(lex.past_stem, []).append(lex)
            self._by_present.setdefault(lex.present_stem, []).append(lex)

    def __len__(self) -> int:
        return len(self._by_lemma)

    def __iter__(self):
        return iter(self._by_lemma.values())

    def __contains__(self, lemma: str) -> bool:
        return nfc(lemma) in self._by_lemma

    def get(self, lemma: str) -> Lexeme:
        try:
            return self._by_lemma[nfc(lemma)]
        except KeyError:
            raise KeyError(f"unknown lemma {lemma!r}") from None

    def by_past_stem(self, stem: str) -> list[Lexeme]:
        return list(self._by_past.get(nfc(stem), ()))

    def by_present_stem(self, stem: str) -> list[Lexeme]:
        return list(self._by_present.get(nfc(stem), ()))

    def verbs(self) -> list[Lexeme]:
        return [x for x in self if x.is_verb]

    def nominals(self) -> list[Lexeme]:
        return [x for x in self if not x.is_verb]


def load_lexicon(source: Union[TextIO, str, Iterable[str]]) -> Lexicon:
    """Read a tab-separated lexicon; the first violation raises LexiconError."""
    if isinstance(source, str):
        source = io.StringIO(source)
    lexicon = Lexicon()
    header_seen = False
    for row, line in enumerate(source, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if not header_seen and cols[0].strip().lower() == "lemma":
            header_seen = True
            continue
        lex = build_lexeme(cols, row)
        if lex.lemma in lexicon:
            raise LexiconError(row, 1, f"duplicate lemma {lex.lemma!r}")
        lexicon.add(lex)
    return lexicon


def load_lexicon_file(path: str) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return load_lexicon(fh)


def seed_lexicon() -> Lexicon:
    text = resources.files("sorani").joinpath("data/seed_lexicon.tsv").read_text(encoding="utf-8")
    return load_lexicon(text)
