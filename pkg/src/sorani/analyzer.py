"""Word-form analysis: surface string to (lexeme, features, segmentation, gloss)."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .core import (
    CONSTRUCTION_ORDER,
    VOWELS,
    FeatureBundle,
    Morpheme,
    MorphemeSequence,
    nfc,
    segments,
)
from .lexicon import Lexeme, Lexicon, seed_lexicon
from .nominal import NominalFeatures, enumerate_nominal, inflect_noun
from .phonology import GLIDE_ORDER, Realization, realize
from .verbs import DEFAULT_OPTIONS, GenerationOptions, enumerate_bundles, generate_variants

log = logging.getLogger(__name__)

ZERO = "∅"
EMPHATIC = "îş"
_CLITIC_KINDS = ("enclitic", "endoclitic", "proclitic")


@dataclass(frozen=True)
class Gloss:
    """Interlinear lines: morph segments, morph tags, and a one-word summary."""

    segments: str
    tags: str
    word: str

    def __str__(self) -> str:
        return f"{self.segments}\n{self.tags}\n{self.word}"


@dataclass(frozen=True)
class Analysis:
    surface: str
    lemma: Optional[str]
    features: Union[FeatureBundle, NominalFeatures]
    segmentation: MorphemeSequence
    trace: Realization
    pos: str = "verb"
    meaning: str = ""
    options: Optional[GenerationOptions] = None
    hypothesized_stem: Optional[str] = None
    emphatic: bool = False

    @property
    def construction(self) -> Optional[str]:
        return self.features.construction if isinstance(self.features, FeatureBundle) else None

    @property
    def known(self) -> bool:
        return self.lemma is not None

    @property
    def gloss(self) -> Gloss:
        return gloss(self)

    def regenerated(self) -> str:
        """The surface this analysis stands for, rebuilt from its segmentation."""
        host = realize(self.segmentation, self.trace.order).surface
        if self.emphatic:
            host += "ş" if host and segments(host)[-1] in VOWELS else EMPHATIC
        return host

    def features_text(self) -> str:
        return self.features.describe()

    def sort_key(self) -> tuple:
        if isinstance(self.features, FeatureBundle):
            fk = (0,) + self.features.sort_key()
        else:
            f = self.features
            fk = (1, f.determiner, f.number, f.case, f.gender or "", f.plural_suffix or "", str(f.possessor or ""), f.emphasis)
        return (self.lemma is None, fk, self.lemma or "", self.hypothesized_stem or "", self.emphatic)

    def to_dict(self) -> dict:
        g = self.gloss
        return {
            "lemma": self.lemma if self.known else "unknown-stem",
            "stem": self.hypothesized_stem,
            "pos": self.pos,
            "construction": self.construction,
            "features": self.features_text(),
            "emphatic": self.emphatic,
            "segmentation": self.segmentation.underlying(),
            "gloss": g.segments,
            "tags": g.tags,
            "word_gloss": g.word,
        }


def _separator(m: Morpheme) -> str:
    return "=" if m.kind in _CLITIC_KINDS else "-"


def _morph_tag(m: Morpheme, meaning: str) -> str:
    if m.kind == "root":
        return m.gloss if "." in m.gloss else meaning or m.gloss
    return m.gloss


def _line(units: list[tuple[Morpheme, str]]) -> str:
    out = ""
    for i, (m, text) in enumerate(units):
        out += (_separator(m) if i else "") + text
    return out


def _word_tags(a: Analysis) -> list[str]:
    f = a.features
    if not isinstance(f, FeatureBundle):
        tags = [{"absolute": "ABS", "indefinite": "INDF", "definite": "DEF", "demonstrative": "DEM"}[f.determiner], f.number]
        if f.case != "nominative":
            tags.append({"oblique": "OBL", "vocative": "VOC", "locative": "LOC"}[f.case])
            if f.gender:
                tags.append(f.gender)
        if f.possessor:
            tags.append(f"POSS.{f.possessor}")
        if f.emphasis:
            tags.append("EMPH")
        return tags
    cid = f.construction
    if cid == "infinitive":
        tags = ["INF"]
    elif cid == "perfect-participle":
        tags = ["PTCP"]
    else:
        tense = "PRS" if cid.startswith("present-") and not cid.startswith("present-perfect") else "PST"
        tags = [tense]
        if cid.startswith("past-progressive") or (tense == "PRS" and f.mood == "IND"):
            tags.append("PROG")
        if cid.startswith(("present-perfect", "past-perfect")):
            tags.append("PRF")
        if f.mood in ("SBJV", "IMP", "COND"):
            tags.append(f.mood)
    if f.voice == "passive":
        tags.append("PASS")
    if f.negation:
        tags.append("NEG")
    if cid.endswith("-intr"):
        tags.append("INTR")
    elif cid.endswith("-tr"):
        tags.append("TR")
    if f.agent:
        tags.append(str(f.agent))
    if f.patient:
        tags.append(f"{f.patient}.PAT")
    if f.directional:
        tags.append("DIR")
    if f.repetition:
        tags.append("REP")
    return tags


def gloss(a: Analysis) -> Gloss:
    """Leipzig-style lines; affix boundaries are '-', clitic boundaries '='."""
    seq = a.segmentation
    seg_units, tag_units = [], []
    for m in seq.items:
        if m.kind == "derivational-suffix" and m.empty:
            continue  # a zero stem-forming suffix adds nothing to the line
        seg_units.append((m, m.form or ZERO))
        tag_units.append((m, _morph_tag(m, a.meaning)))
    if a.emphatic:
        emph = Morpheme(EMPHATIC, "endoclitic", "EMPH", id="=îş")
        seg_units.append((emph, EMPHATIC))
        tag_units.append((emph, "EMPH"))
    word = ".".join([a.meaning or (a.hypothesized_stem or "?")] + _word_tags(a) + (["EMPH"] if a.emphatic else []))
    return Gloss(_line(seg_units), _line(tag_units), word)


# ---------------------------------------------------------------------------
# Indexes


@dataclass(frozen=True)
class _Entry:
    features: Union[FeatureBundle, NominalFeatures]
    options: Optional[GenerationOptions]
    seq: MorphemeSequence
    trace: Realization


def _anchors(lex: Lexeme) -> set[str]:
    """Substrings one of which every surface form of lex must contain."""
    bases = set(lex.root) | {lex.past_stem, lex.present_stem}
    bases |= {m.form for t in ("past", "present") for m in lex.stem_morphs(t)[:1]}
    for forms in lex.irregulars.values():
        bases.update(forms)
    out = set()
    for b in filter(None, bases):
        segs = segments(b)
        out.add(b)
        # stem edges that the alternations may delete or rewrite
        if len(segs) > 1 and segs[-1] in VOWELS:
            out.add("".join(segs[:-1]))
        if len(segs) > 1 and segs[0] in VOWELS:
            out.add("".join(segs[1:]))
    return out


NEGATION_PREFIXES = ("ne", "na", "me")


def compile_verb(lex: Lexeme, partition: Optional[tuple[bool, bool]] = None) -> dict[str, list[_Entry]]:
    """Every surface form of a verb lexeme across bundles and dialect options.

    partition = (negation, repetition) restricts the bundles compiled.
    """
    index: dict[str, list[_Entry]] = {}
    for f in enumerate_bundles(lex):
        if partition is not None and (f.negation, f.repetition) != partition:
            continue
        for opts, seq in generate_variants(lex, f):
            r = realize(seq)
            index.setdefault(r.surface, []).append(_Entry(f, opts, seq, r))
    return index


def compile_nominal(stem: str, pos: str, northern: bool = False) -> dict[str, list[_Entry]]:
    index: dict[str, list[_Entry]] = {}
    for nf in enumerate_nominal(northern):
        seq = inflect_noun(stem, nf, pos, northern)
        r = realize(seq)
        index.setdefault(r.surface, []).append(_Entry(nf, None, seq, r))
        alt = realize(seq, GLIDE_ORDER)
        if alt.surface != r.surface:
            index.setdefault(alt.surface, []).append(_Entry(nf, None, seq, alt))
    return index


GUESS_STEM = "Q"  # stands for any consonant-edged stem


def _guess_lexeme(stem: str, transitivity: str) -> Lexeme:
    return Lexeme(f"?{stem}", (stem,), stem, stem, transitivity)


def _templates(northern: bool) -> list[tuple[str, str, str, _Entry]]:
    """(prefix, suffix, class, entry) for a placeholder stem."""
    out = []
    for trans in ("transitive", "intransitive"):
        for surface, entries in compile_verb(_guess_lexeme(GUESS_STEM, trans)).items():
            if surface.count(GUESS_STEM) == 1:
                pre, suf = surface.split(GUESS_STEM)
                out += [(pre, suf, trans, e) for e in entries]
    for pos in ("noun", "adjective"):
        for surface, entries in compile_nominal(GUESS_STEM, pos, northern).items():
            pre, suf = surface.split(GUESS_STEM)
            out += [(pre, suf, pos, e) for e in entries]
    return out


def _emphatic_hosts(word: str) -> list[str]:
    """Hosts left after removing a trailing emphatic =îş (=ş after a vowel)."""
    segs = segments(word)
    out = []
    if len(segs) > 2 and segs[-2:] == ["î", "ş"]:
        out.append("".join(segs[:-2]))
    if len(segs) > 1 and segs[-1] == "ş" and segs[-2] in VOWELS:
        out.append("".join(segs[:-1]))
    return out


class Analyzer:
    """Analyses against one lexicon; lexeme indexes are built on first use."""

    def __init__(self, lexicon: Optional[Lexicon] = None, guess: bool = False, northern: bool = False):
        self.lexicon = lexicon if lexicon is not None else seed_lexicon()
        self.guess = guess
        self.northern = northern
        self._verb_index: dict[str, dict[str, list[_Entry]]] = {}
        self._anchor_map = [(lex, sorted(_anchors(lex), key=len, reverse=True)) for lex in self.lexicon.verbs()]
        self._nominal: Optional[dict[str, list[tuple[Lexeme, _Entry]]]] = None
        self._templates: Optional[list] = None

    # -- indexes
    def verb_index(self, lex: Lexeme, partition: Optional[tuple[bool, bool]] = None) -> dict[str, list[_Entry]]:
        """Surface index of one lexeme, for one (negation, repetition) partition or all of them."""
        if partition is None:
            merged: dict[str, list[_Entry]] = {}
            for part in itertools.product((False, True), repeat=2):
                for surface, entries in self.verb_index(lex, part).items():
                    merged.setdefault(surface, []).extend(entries)
            return merged
        key = (lex.lemma, partition)
        idx = self._verb_index.get(key)
        if idx is None:
            log.debug("compiling %s %s", lex.lemma, partition)
            idx = self._verb_index[key] = compile_verb(lex, partition)
        return idx

    def compile_all(self) -> int:
        """Build every index up front (as a finite-state compiler would); returns the entry count."""
        n = sum(len(v) for v in self.nominal_index().values())
        for lex in self.lexicon.verbs():
            n += sum(len(v) for v in self.verb_index(lex).values())
        return n

    @staticmethod
    def partitions(lex: Lexeme, word: str) -> list[tuple[bool, bool]]:
        """The (negation, repetition) partitions word could belong to."""
        head = word[: len(lex.particle or "") + 5]
        negs = (False, True) if any(p in head for p in NEGATION_PREFIXES) else (False,)
        reps = (False, True) if "we" in word else (False,)
        return list(itertools.product(negs, reps))

    def nominal_index(self) -> dict[str, list[tuple[Lexeme, _Entry]]]:
        if self._nominal is None:
            self._nominal = {}
            for lex in self.lexicon.nominals():
                for surface, entries in compile_nominal(lex.lemma, lex.pos, self.northern).items():
                    self._nominal.setdefault(surface, []).extend((lex, e) for e in entries)
        return self._nominal

    def candidates(self, word: str) -> list[Lexeme]:
        """Verb lexemes whose stem anchors occur in word."""
        out = []
        for lex, anchors in self._anchor_map:
            if lex.particle and lex.particle.rstrip("".join(VOWELS)) not in word:
                continue
            if lex.derived_ewe and "we" not in word:
                continue
            if any(a in word for a in anchors):
                out.append(lex)
        return out

    # -- analysis
    def _known(self, word: str, host: str, emphatic: bool) -> list[Analysis]:
        out = []
        for lex in self.candidates(host):
            entries = [e for part in self.partitions(lex, host) for e in self.verb_index(lex, part).get(host, ())]
            for e in entries:
                out.append(Analysis(word, lex.lemma, e.features, e.seq, e.trace, "verb", lex.meaning, e.options, emphatic=emphatic))
        if not emphatic:
            for lex, e in self.nominal_index().get(host, ()):
                out.append(Analysis(word, lex.lemma, e.features, e.seq, e.trace, lex.pos, lex.meaning))
        return out

    def _guessed(self, word: str, host: str, emphatic: bool) -> list[Analysis]:
        if self._templates is None:
            self._templates = _templates(self.northern)
        out = []
        for pre, suf, cls, e in self._templates:
            if emphatic and cls in ("noun", "adjective"):
                continue
            if not (host.startswith(pre) and host.endswith(suf)) or len(host) < len(pre) + len(suf) + 2:
                continue
            stem = host[len(pre) : len(host) - len(suf)]
            segs = segments(stem)
            if segs[0] in VOWELS or segs[-1] in VOWELS:
                continue
            if cls in ("noun", "adjective"):
                seq = inflect_noun(stem, e.features, cls, self.northern)
                meaning = ""
            else:
                from .verbs import generate_verb

                lex = _guess_lexeme(stem, cls)
                seq = generate_verb(lex, e.features, e.options)
            r = realize(seq)
            if r.surface == host:
                out.append(Analysis(word, None, e.features, seq, r, "verb" if cls.endswith("transitive") else cls, "", e.options, stem, emphatic))
        return out

    def analyze(self, surface: str) -> list[Analysis]:
        """All analyses of one word-form, deduplicated and in a fixed order."""
        word = nfc(surface.strip()).lower()
        if not word:
            return []
        hosts = [(word, False)] + [(h, True) for h in _emphatic_hosts(word)]
        found: list[Analysis] = []
        for host, emph in hosts:
            found += self._known(word, host, emph)
        if self.guess and not found:
            for host, emph in hosts:
                found += self._guessed(word, host, emph)
        seen: dict[tuple, Analysis] = {}
        for a in sorted(found, key=Analysis.sort_key):
            key = (a.lemma, a.hypothesized_stem, a.pos, a.features, a.emphatic)
            seen.setdefault(key, a)
        return list(seen.values())


_DEFAULT: dict[int, Analyzer] = {}


def analyze(surface: str, lexicon: Optional[Lexicon] = None, guess: bool = False) -> list[Analysis]:
    """Convenience wrapper that reuses one Analyzer per lexicon object."""
    key = (id(lexicon), guess)
    if key not in _DEFAULT:
        _DEFAULT[key] = Analyzer(lexicon, guess=guess)
    return _DEFAULT[key].analyze(surface)
