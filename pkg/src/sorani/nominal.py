"""Noun inflection, Izafa constructions and adjective degree."""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Union

from .core import PERSONS, FeatureError, Morpheme, MorphemeSequence, PersonNumber, marker_forms, nfc
from .phonology import realize

DETERMINERS = ("absolute", "indefinite", "definite", "demonstrative")
CASES = ("nominative", "oblique", "vocative", "locative")
PLURAL_SUFFIXES = ("an", "gel", "ha", "at")
DEM_PLURALS = ("ane", "gele")
IZAFA_KINDS = ("construct-î", "close-e", "linker", "compounding-e", "prepositive-adjective-e")
LINKERS = ("î", "hî", "hîn")

# (determiner, number) -> (form, gloss)
_DETERMINER_SUFFIX = {
    ("absolute", "SG"): ("", "ABS"),
    ("absolute", "PL"): ("", "ABS"),
    ("indefinite", "SG"): ("êk", "INDF.SG"),
    ("indefinite", "PL"): ("an", "PL.INDF"),
    ("definite", "SG"): ("eke", "DEF.SG"),
    ("definite", "PL"): ("ekan", "DEF.PL"),
    ("demonstrative", "SG"): ("e", "DEM.SG"),
    ("demonstrative", "PL"): ("ane", "DEM.PL"),
}
# (case, gender or number) -> (form, gloss)
_CASE_SUFFIX = {
    ("oblique", "M"): ("î", "OBL.M"),
    ("oblique", "F"): ("ê", "OBL.F"),
    ("vocative", "M"): ("e", "VOC.M"),
    ("vocative", "F"): ("ê", "VOC.F"),
    ("vocative", "PL"): ("îne", "VOC.PL"),
    ("locative", None): ("ê", "LOC"),
}


@dataclass(frozen=True)
class NominalFeatures:
    determiner: str = "absolute"
    number: str = "SG"
    case: str = "nominative"
    gender: Optional[str] = None
    plural_suffix: Optional[str] = None
    possessor: Optional[PersonNumber] = None
    emphasis: bool = False

    def __post_init__(self):
        if isinstance(self.possessor, str):
            object.__setattr__(self, "possessor", PersonNumber.parse(self.possessor))

    def describe(self) -> str:
        parts = [self.determiner, self.number]
        if self.case != "nominative":
            parts.append(self.case + (f".{self.gender}" if self.gender else ""))
        if self.plural_suffix:
            parts.append(f"plural={self.plural_suffix}")
        if self.possessor:
            parts.append(f"possessor={self.possessor}")
        if self.emphasis:
            parts.append("emphasis=yes")
        return " ".join(parts)


def nominal_errors(nf: NominalFeatures, northern: bool = False) -> list[str]:
    errs = []
    if nf.determiner not in DETERMINERS:
        errs.append(f"unknown determiner {nf.determiner!r}")
    if nf.number not in ("SG", "PL"):
        errs.append(f"unknown number {nf.number!r}")
    if nf.case not in CASES:
        errs.append(f"unknown case {nf.case!r}")
    elif nf.case != "nominative" and not northern:
        errs.append("case suffixes need the northern-sorani setting")
    if nf.gender is not None and nf.case not in ("oblique", "vocative"):
        errs.append("gender only with oblique or vocative case")
    if nf.case in ("oblique",) and nf.gender not in ("M", "F"):
        errs.append("oblique case needs a gender")
    if nf.case == "vocative" and nf.number == "SG" and nf.gender not in ("M", "F"):
        errs.append("singular vocative needs a gender")
    if nf.case == "vocative" and nf.number == "PL" and nf.gender is not None:
        errs.append("plural vocative takes no gender")
    if nf.case == "locative" and nf.determiner != "absolute":
        errs.append("locative only on absolute nouns")
    if nf.plural_suffix is not None:
        if (nf.determiner, nf.number) != ("indefinite", "PL"):
            errs.append("a plural suffix choice only for indefinite plural")
        elif nf.plural_suffix not in PLURAL_SUFFIXES:
            errs.append(f"unknown plural suffix {nf.plural_suffix!r}")
    return errs


def inflect_noun(stem: str, nf: NominalFeatures, pos: str = "noun", northern: bool = False, gloss: str = "") -> MorphemeSequence:
    """Stem, then determiner/number, case, possessor and emphasis suffixes."""
    errs = nominal_errors(nf, northern)
    if errs:
        raise FeatureError("; ".join(errs))
    stem = nfc(stem)
    items = [Morpheme(stem, "root", gloss or stem)]
    form, tag = _DETERMINER_SUFFIX[(nf.determiner, nf.number)]
    if nf.plural_suffix:
        form = nf.plural_suffix
    if form:
        items.append(Morpheme(form, "inflectional-suffix", tag, id=form))
    if nf.case != "nominative":
        key = (nf.case, nf.gender if nf.case != "locative" else None)
        if nf.case == "vocative" and nf.number == "PL":
            key = ("vocative", "PL")
        cform, ctag = _CASE_SUFFIX[key]
        items.append(Morpheme(cform, "inflectional-suffix", ctag, id=cform))
    if nf.possessor is not None:
        pform = marker_forms("PM4", nf.possessor)[0]
        items.append(Morpheme(pform, "enclitic", f"POSS.{nf.possessor}", id="=" + pform, series="PM4"))
    if nf.emphasis:
        items.append(Morpheme("îş", "endoclitic", "EMPH", id="=îş"))
    return MorphemeSequence(items, 0, 1, pos=pos)


def realize_noun(stem: str, nf: NominalFeatures, pos: str = "noun", northern: bool = False) -> str:
    return realize(inflect_noun(stem, nf, pos, northern)).surface


def enumerate_nominal(northern: bool = False) -> Iterator[NominalFeatures]:
    """Every valid feature set, in a fixed order."""
    cases = [("nominative", None)]
    if northern:
        cases += [("oblique", "M"), ("oblique", "F"), ("vocative", "M"), ("vocative", "F"), ("vocative", None), ("locative", None)]
    for det, num in _DETERMINER_SUFFIX:
        plurals = (None,) + PLURAL_SUFFIXES[1:] if (det, num) == ("indefinite", "PL") else (None,)
        for (case, gender), pl, poss, emph in itertools.product(cases, plurals, (None,) + PERSONS, (False, True)):
            nf = NominalFeatures(det, num, case, gender, pl, poss, emph)
            if not nominal_errors(nf, northern):
                yield nf


def grade(base: str, degree: str) -> str:
    """Comparative -tir or superlative -tirîn, by plain concatenation."""
    suffix = {"COMP": "tir", "SUPL": "tirîn"}.get(degree.upper())
    if suffix is None:
        raise ValueError(f"degree must be COMP or SUPL, got {degree!r}")
    return nfc(base) + suffix


class IzafaError(FeatureError):
    pass


@dataclass(frozen=True)
class IzafaLink:
    kind: str
    linker: str = "î"

    def __post_init__(self):
        if self.kind not in IZAFA_KINDS:
            raise IzafaError(f"unknown Izafa kind {self.kind!r}")
        if self.kind == "linker" and self.linker not in LINKERS:
            raise IzafaError(f"unknown linker {self.linker!r}")


@dataclass(frozen=True)
class NounState:
    """An inflected head waiting for its dependent; `pre` is a free word such as ew."""

    stem: str
    features: NominalFeatures = NominalFeatures()
    pos: str = "noun"
    pre: Optional[str] = None

    def sequence(self) -> MorphemeSequence:
        return inflect_noun(self.stem, self.features, self.pos)

    def text(self) -> str:
        word = realize(self.sequence()).surface
        return f"{self.pre} {word}" if self.pre else word


EZAFE_I = Morpheme("î", "enclitic", "EZ", id="=î")
EZAFE_E = Morpheme("e", "enclitic", "EZ", id="=e")


def _with_ezafe(seq: MorphemeSequence, ez: Morpheme) -> str:
    return realize(seq.append(ez)).surface


def attach_izafa(head: Union[NounState, str], dependent: str, link: Union[IzafaLink, str]) -> str:
    """Join a head to one dependent word through an Izafa link."""
    if isinstance(link, str):
        link = IzafaLink(link)
    if isinstance(head, str):
        head = NounState(head)
    nf = head.features
    pre = f"{head.pre} " if head.pre else ""
    dependent = nfc(dependent)
    if link.kind == "construct-î":
        return pre + _with_ezafe(head.sequence(), EZAFE_I) + " " + dependent
    if link.kind == "linker":
        return f"{head.text()} {link.linker} {dependent}"
    if link.kind == "close-e":
        if nf.determiner not in ("definite", "demonstrative"):
            raise IzafaError(f"close-e needs a definite or demonstrative head, not {nf.determiner}")
        bare = inflect_noun(head.stem, NominalFeatures(), head.pos)
        moved = replace(nf, case="nominative", gender=None)
        dep = realize(inflect_noun(dependent, moved, "adjective")).surface
        return pre + _with_ezafe(bare, EZAFE_E) + " " + dep
    if link.kind == "compounding-e":
        return pre + _with_ezafe(head.sequence(), EZAFE_E) + dependent
    # prepositive: the head is the adjective and the dependent the noun
    adj = inflect_noun(head.stem, NominalFeatures(), "adjective")
    return pre + _with_ezafe(adj, EZAFE_E) + " " + dependent


# -- inverse direction: degree forms and Izafa phrases


def _nominal_lexicon(lexicon):
    if lexicon is None:
        from .lexicon import seed_lexicon

        lexicon = seed_lexicon()
    return lexicon.nominals()


@dataclass(frozen=True, order=True)
class DegreeAnalysis:
    base: str
    degree: str
    pos: str


def analyze_degree(word: str, lexicon=None) -> list[DegreeAnalysis]:
    """Adjective or adverb bases whose comparative or superlative is word."""
    word = nfc(word)
    out = []
    for lex in _nominal_lexicon(lexicon):
        if lex.pos in ("adjective", "adverb") and word.startswith(lex.lemma):
            out += [DegreeAnalysis(lex.lemma, d, lex.pos) for d in ("COMP", "SUPL") if grade(lex.lemma, d) == word]
    return sorted(out)


@dataclass(frozen=True)
class IzafaAnalysis:
    head: NounState
    dependent: str
    link: IzafaLink

    def text(self) -> str:
        return attach_izafa(self.head, self.dependent, self.link)


@functools.lru_cache(maxsize=None)
def _head_forms(stem: str, nf: NominalFeatures, pos: str) -> tuple[str, str, str]:
    """The inflected head alone, with =î and with =e."""
    seq = inflect_noun(stem, nf, pos)
    return realize(seq).surface, _with_ezafe(seq, EZAFE_I), _with_ezafe(seq, EZAFE_E)


def _links() -> list[IzafaLink]:
    return [IzafaLink(k) for k in IZAFA_KINDS if k != "linker"] + [IzafaLink("linker", x) for x in LINKERS]


def analyze_izafa(phrase: str, lexicon=None) -> list[IzafaAnalysis]:
    """Head, dependent and link readings that regenerate phrase exactly."""
    phrase = " ".join(nfc(phrase).split())
    words = phrase.split()
    if not words:
        return []
    pre = "ew" if words[0] == "ew" and len(words) > 1 else None
    first = words[1] if pre else words[0]
    nominals = _nominal_lexicon(lexicon)
    heads = [lex for lex in nominals if first.startswith(lex.lemma)]
    rest = words[(2 if pre else 1):]
    # a close-e dependent carries the moved suffixes, so it has to be a known lexeme
    lemmas = sorted({lex.lemma for lex in nominals if any(w.startswith(lex.lemma) for w in rest)})
    seen, out = set(), []
    for lex, link in itertools.product(heads, _links()):
        if link.kind == "prepositive-adjective-e":
            feature_sets = [NominalFeatures()]
        elif link.kind == "close-e":
            feature_sets = [nf for nf in enumerate_nominal() if nf.determiner in ("definite", "demonstrative")]
        else:
            feature_sets = list(enumerate_nominal())
        for nf in feature_sets:
            plain, with_i, with_e = _head_forms(lex.lemma, nf, lex.pos)
            if link.kind == "construct-î":
                deps = [" ".join(rest)] if rest and with_i == first else []
            elif link.kind == "linker":
                deps = [" ".join(rest[1:])] if len(rest) > 1 and rest[0] == link.linker and plain == first else []
            elif link.kind == "compounding-e":
                deps = [first[len(with_e):]] if first.startswith(with_e) and len(first) > len(with_e) and not rest else []
            elif link.kind == "close-e":
                deps = lemmas
            else:
                deps = [" ".join(rest)] if rest else []
            for dep in deps:
                head = NounState(lex.lemma, nf, lex.pos, pre)
                key = (head, dep, link)
                if key not in seen and attach_izafa(head, dep, link) == phrase:
                    seen.add(key)
                    out.append(IzafaAnalysis(head, dep, link))
    return out
