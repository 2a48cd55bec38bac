"""Underlying morpheme sequences for the fourteen verb constructions."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .core import (
    CONSTRUCTION_ORDER,
    CONSTRUCTIONS,
    PERSONS,
    FeatureBundle,
    FeatureError,
    Morpheme,
    MorphemeSequence,
    PersonNumber,
    marker_forms,
    validate_features,
)
from .lexicon import Lexeme
from .phonology import realize


@dataclass(frozen=True)
class GenerationOptions:
    """Sub-dialectal choices; analysis accepts every combination."""

    progressive: str = "de"  # or "e"
    subjunctive_bi: bool = True  # False leaves the subjunctive/conditional prefix empty
    long_markers: bool = False  # î/ê versus ît/êt
    conditional: str = "ba"  # or "aye" (intransitive only)
    irregular: bool = True  # listed imperatives override the template

    def __post_init__(self):
        if self.progressive not in ("de", "e"):
            raise ValueError("progressive must be de or e")
        if self.conditional not in ("ba", "aye"):
            raise ValueError("conditional must be ba or aye")


DEFAULT_OPTIONS = GenerationOptions()

PAST_MARKERS = {
    "simple-past": "PM3",
    "present-perfect": "COP",
    "past-perfect-or-subj": "PM3",
    "past-progressive": "PM3",
    "past-conditional": "PM3",
}


def _family(construction: str) -> str:
    return construction.rsplit("-", 1)[0] if construction.endswith(("-intr", "-tr")) else construction


@lru_cache(maxsize=None)
def _prefix(form: str, gloss: str, kind: str = "inflectional-prefix") -> Morpheme:
    return Morpheme(form, kind, gloss, id=form + "-")


@lru_cache(maxsize=None)
def _suffix(form: str, gloss: str, kind: str = "inflectional-suffix", mid: Optional[str] = None) -> Morpheme:
    return Morpheme(form, kind, gloss, id=mid or form)


@lru_cache(maxsize=None)
def person_marker(series: str, pn: PersonNumber, role: str, long: bool = False) -> Morpheme:
    """A person marker; role is AGT or PAT."""
    forms = marker_forms(series, pn)
    if not forms:
        raise FeatureError(f"series {series} has no {pn} cell")
    form = forms[1] if long and len(forms) > 1 else forms[0]
    kind = "endoclitic" if series == "PM4" else "inflectional-suffix"
    return Morpheme(form, kind, f"{role}.{pn}", id=("=" + form) if form else "∅", series=series)


# The past progressive patient list prints -îm for 1SG where the other lists print -im.
PROGRESSIVE_PATIENT_1SG = "îm"


def patient_marker(family: str, pn: PersonNumber, long: bool = False) -> Morpheme:
    series = "COP" if family == "present-perfect" else "PM3"
    m = person_marker(series, pn, "PAT", long)
    if family == "past-progressive" and str(pn) == "1SG":
        m = replace(m, form=PROGRESSIVE_PATIENT_1SG, id=PROGRESSIVE_PATIENT_1SG)
    return m


DIRECTIONAL = Morpheme("e", "enclitic", "DIR", id="=e")
REPETITION = _suffix("ewe", "REP")
DERIVED_EWE = _suffix("ewe", "DER", kind="derivational-suffix")
INFINITIVE = _suffix("in", "INF")
PARTICIPLE = _suffix("û", "PTCP")
PERFECT = _suffix("i", "PRF")
AUXILIARIES = {
    ("past-perfect-or-subj", "IND"): _suffix("bû", "AUX.PST"),
    ("past-perfect-or-subj", "SBJV"): _suffix("bêt", "AUX.SBJV"),
    ("past-conditional", "COND"): _suffix("ba", "AUX.COND"),
}
AYE = _suffix("aye", "AUX.COND")


def place_agent_marker(seq: MorphemeSequence, marker: Morpheme) -> MorphemeSequence:
    """Insert a PM4 endoclitic after the leftmost morpheme, or after the verb core.

    The core is the stem plus any auxiliaries; with nothing before the stem
    the marker follows the core and so precedes any patient marker.
    """
    index = 1 if seq.stem_start > 0 else seq.core_end
    return seq.insert(index, marker)


def bundle_errors(lex: Lexeme, f: FeatureBundle) -> list[str]:
    """Feature-level violations plus lexeme compatibility."""
    errs = validate_features(f)
    if errs:
        return errs
    if not lex.is_verb:
        return [f"{lex.lemma} is not a verb"]
    c = CONSTRUCTIONS[f.construction]
    if c.transitive is True and not lex.transitive:
        errs.append(f"{c.id} needs a transitive verb; {lex.lemma} is intransitive")
    if c.transitive is False and lex.transitive:
        errs.append(f"{c.id} needs an intransitive verb; {lex.lemma} is transitive")
    if f.voice != lex.voice:
        errs.append(f"voice {f.voice} does not match {lex.lemma} ({lex.voice})")
    if lex.derived_ewe and f.repetition:
        errs.append(f"{lex.lemma} already carries -ewe; repetition is not available")
    return errs


def _with_lexeme_voice(lex: Lexeme, f: FeatureBundle) -> FeatureBundle:
    if lex.voice == "passive" and f.voice == "active":
        return replace(f, voice="passive")
    return f


def _irregular(lex: Lexeme, f: FeatureBundle, options: GenerationOptions) -> Optional[MorphemeSequence]:
    if not options.irregular or f.mood != "IMP" or f.voice == "passive":
        return None
    if f.negation or f.directional or f.repetition or f.patient:
        return None
    forms = lex.irregulars.get(f"IMP.{f.agent}")
    if not forms:
        return None
    items = []
    if lex.particle:
        items.append(lex.particle_morph())
    items.append(Morpheme(forms[0], "root", f"{lex.meaning}.IMP.{f.agent}"))
    n = len(items)
    return MorphemeSequence(items, n - 1, n, stem_tense="present")


def irregular_variants(lex: Lexeme, f: FeatureBundle) -> list[MorphemeSequence]:
    """All listed irregular realizations for the bundle (may be empty)."""
    seq = _irregular(lex, f, DEFAULT_OPTIONS)
    if seq is None:
        return []
    out = []
    for form in lex.irregulars[f"IMP.{f.agent}"]:
        items = list(seq.items)
        items[seq.stem_start] = replace(items[seq.stem_start], form=form)
        out.append(replace(seq, items=tuple(items)))
    return out


def _modal_prefixes(f: FeatureBundle, family: str, options: GenerationOptions) -> list[Morpheme]:
    neg = f.derived_negation()
    prog = _prefix(options.progressive, "PROG")
    if family in ("infinitive", "simple-past", "perfect-participle", "present-perfect", "past-perfect-or-subj"):
        return [_prefix(neg, "NEG")] if neg else []
    if family == "past-progressive":
        return ([_prefix(neg, "NEG")] if neg else []) + [prog]
    if family == "past-conditional":
        if neg:
            return [_prefix(neg, "NEG")]
        return [_prefix("bi", "SBJV")] if options.subjunctive_bi else []
    # present
    if neg:
        return [_prefix(neg, "NEG")]
    if f.mood == "IND":
        return [prog]
    if f.mood == "IMP" and f.voice != "passive":
        return [_prefix("bi", "IMP")]
    return [_prefix("bi", "SBJV")] if options.subjunctive_bi else []


def _agent_series(family: str, f: FeatureBundle) -> str:
    if family == "present":
        return "PM2" if f.mood == "IMP" and f.voice != "passive" else "PM1"
    return PAST_MARKERS[family]


def generate_verb(lex: Lexeme, f: FeatureBundle, options: GenerationOptions = DEFAULT_OPTIONS) -> MorphemeSequence:
    """Build the underlying sequence for one lexeme and feature bundle."""
    f = _with_lexeme_voice(lex, f).resolved()
    errs = bundle_errors(lex, f)
    if errs:
        raise FeatureError("; ".join(errs))
    irregular = _irregular(lex, f, options)
    if irregular is not None:
        return irregular
    c = CONSTRUCTIONS[f.construction]
    family = _family(c.id)
    if not lex.stem(c.stem):
        raise FeatureError(f"{lex.lemma} has no {c.stem} stem")

    pre = [lex.particle_morph()] if lex.particle else []
    pre += _modal_prefixes(f, family, options)
    stem = lex.stem_morphs(c.stem)
    aux: list[Morpheme] = []
    use_aye = family == "past-conditional" and options.conditional == "aye" and not c.transitive and not (f.directional or f.repetition)
    if family in ("perfect-participle", "present-perfect"):
        aux = [PARTICIPLE]
    elif family == "past-perfect-or-subj":
        aux = [PERFECT, AUXILIARIES[(family, f.mood)]]
    elif family == "past-conditional":
        aux = [PERFECT] if use_aye else [PERFECT, AUXILIARIES[(family, "COND")]]
    n = len(pre)
    seq = MorphemeSequence(pre + stem + aux, n, n + len(stem), n + len(stem) + len(aux), stem_tense=c.stem)

    long = options.long_markers
    if family == "infinitive":
        seq = seq.append(INFINITIVE)
    elif family == "perfect-participle":
        pass
    elif c.transitive and family != "present":
        seq = seq.append(patient_marker(family, f.patient, long))
        seq = place_agent_marker(seq, person_marker("PM4", f.agent, "AGT"))
    else:
        seq = seq.append(person_marker(_agent_series(family, f), f.agent, "AGT", long))
        if use_aye:
            seq = seq.append(AYE)
        if family == "present" and f.patient is not None:
            seq = place_agent_marker(seq, person_marker("PM4", f.patient, "PAT"))
    if f.directional:
        seq = seq.append(DIRECTIONAL)
    if f.repetition:
        seq = seq.append(REPETITION)
    if lex.derived_ewe:
        seq = seq.append(DERIVED_EWE)
    return seq


def realize_verb(lex: Lexeme, f: FeatureBundle, options: GenerationOptions = DEFAULT_OPTIONS) -> str:
    return realize(generate_verb(lex, f, options)).surface


def enumerate_bundles(lex: Lexeme, constructions: Optional[Iterable[str]] = None) -> Iterator[FeatureBundle]:
    """Every valid bundle for the lexeme in a fixed order."""
    wanted = set(constructions) if constructions is not None else None
    for cid in CONSTRUCTION_ORDER:
        if wanted is not None and cid not in wanted:
            continue
        c = CONSTRUCTIONS[cid]
        for mood in c.moods:
            agents = (None,) if not c.finite else tuple(p for p in PERSONS if mood != "IMP" or p.person == 2)
            if c.transitive and c.stem == "past":
                patients = PERSONS
            elif c.transitive:
                patients = (None,) + PERSONS
            else:
                patients = (None,)
            for agent, patient, neg, dr, rep in itertools.product(agents, patients, (False, True), (False, True), (False, True)):
                f = FeatureBundle(cid, mood, agent, patient, neg, dr, rep, voice=lex.voice)
                if not bundle_errors(lex, f):
                    yield f


def option_variants(lex: Lexeme, f: FeatureBundle) -> list[GenerationOptions]:
    """Option settings that can change the output for this bundle."""
    f = _with_lexeme_voice(lex, f).resolved()
    family = _family(f.construction)
    prog = ("de", "e") if family == "past-progressive" or (family == "present" and f.mood == "IND" and not f.negation) else ("de",)
    bi_slot = (family == "past-conditional" or (family == "present" and f.mood in ("SBJV", "IMP"))) and not f.negation
    subj = (True, False) if bi_slot else (True,)
    long = (False, True)
    cond = ("ba", "aye") if family == "past-conditional" else ("ba",)
    irr = (True, False) if f.mood == "IMP" and lex.irregulars else (True,)
    return [GenerationOptions(*combo) for combo in itertools.product(prog, subj, long, cond, irr)]


def generate_variants(lex: Lexeme, f: FeatureBundle) -> list[tuple[GenerationOptions, MorphemeSequence]]:
    """Distinct underlying sequences across dialect options, defaults first."""
    seen: dict[str, tuple[GenerationOptions, MorphemeSequence]] = {}
    f = _with_lexeme_voice(lex, f).resolved()
    alts = irregular_variants(lex, f)
    for opts in option_variants(lex, f):
        seq = generate_verb(lex, f, opts)
        seen.setdefault(seq.underlying(), (opts, seq))
        for alt in alts if opts.irregular else ():
            seen.setdefault(alt.underlying(), (opts, alt))
    return list(seen.values())


@dataclass(frozen=True)
class ParadigmRow:
    lemma: str
    features: FeatureBundle
    underlying: str
    surface: str

    def tsv(self) -> str:
        return "\t".join((self.lemma, self.features.construction, self.features.describe(), self.underlying, self.surface))


def paradigm(lex: Lexeme, constructions: Optional[Iterable[str]] = None, options: GenerationOptions = DEFAULT_OPTIONS) -> list[ParadigmRow]:
    """One row per valid bundle, realized with the given options."""
    rows = []
    for f in enumerate_bundles(lex, constructions):
        seq = generate_verb(lex, f, options)
        rows.append(ParadigmRow(lex.lemma, f, seq.underlying(), realize(seq).surface))
    return rows


# Slot templates over one-letter slot symbols:
# D particle, N negation, M modal/progressive, S stem, U participle, I perfect i,
# X auxiliary, Y -aye, A agent PM4, Q patient PM4, G agent suffix, P patient suffix,
# R directional, E repetition, V derivational -ewe, F infinitive.
TEMPLATES = {
    "infinitive": r"D?N?SFE?V?",
    "simple-past-intr": r"D?N?SGR?E?V?",
    "simple-past-tr": r"(?:DAN?S|NAS|SA)PR?E?V?",
    "perfect-participle": r"D?N?SUV?",
    "present-perfect-intr": r"D?N?SUGR?E?V?",
    "present-perfect-tr": r"(?:DAN?SU|NASU|SUA)PR?E?V?",
    "past-perfect-or-subj-intr": r"D?N?SIXGR?E?V?",
    "past-perfect-or-subj-tr": r"(?:DAN?SIX|NASIX|SIXA)PR?E?V?",
    "past-progressive-intr": r"D?N?MSGR?E?V?",
    "past-progressive-tr": r"(?:DAN?M|NAM|MA)SPR?E?V?",
    "past-conditional-intr": r"D?[NM]?SI(?:XGR?E?V?|GY)",
    "past-conditional-tr": r"(?:DA[NM]?SIX|[NM]ASIX|SIXA)PR?E?V?",
    "present-intr": r"D?[NM]?SGR?E?V?|D?S",
    "present-tr": r"(?:D?[NM]?S|DQ[NM]?S|[NM]QS|SQ)GR?E?V?|D?S",
}
# Fillers for the negation and modal slots
FILLERS = {
    ("past-progressive", "IND"): {"N": {"ne"}, "M": {"de", "e"}},
    ("past-conditional", "COND"): {"N": {"ne"}, "M": {"bi"}},
    ("present", "IND"): {"N": {"na"}, "M": {"de", "e"}},
    ("present", "SBJV"): {"N": {"ne"}, "M": {"bi"}},
    ("present", "IMP"): {"N": {"me"}, "M": {"bi"}},
}


def slot_symbol(seq: MorphemeSequence, i: int) -> str:
    m = seq.items[i]
    if seq.in_stem(i):
        return "S"
    if m.kind == "derivational-prefix":
        return "D"
    if m.gloss == "NEG":
        return "N"
    if m.kind == "inflectional-prefix":
        return "M"
    if m.series == "PM4":
        return "A" if m.gloss.startswith("AGT") else "Q"
    if m.series is not None:
        return "G" if m.gloss.startswith("AGT") else "P"
    return {"PTCP": "U", "PRF": "I", "DIR": "R", "REP": "E", "DER": "V", "INF": "F"}.get(
        m.gloss, "Y" if m.form == "aye" else "X" if m.gloss.startswith("AUX") else "?"
    )


def slot_string(seq: MorphemeSequence) -> str:
    out = []
    for i in range(len(seq.items)):
        sym = slot_symbol(seq, i)
        if not (sym == "S" and out and out[-1] == "S"):
            out.append(sym)
    return "".join(out)


def conforms(seq: MorphemeSequence, f: FeatureBundle) -> bool:
    """Check a sequence against its construction's slot template and fillers."""
    f = f.resolved()
    if not re.fullmatch(TEMPLATES[f.construction], slot_string(seq)):
        return False
    mood = "SBJV" if f.mood == "IMP" and f.voice == "passive" else f.mood
    allowed = FILLERS.get((_family(f.construction), mood))
    for i, m in enumerate(seq.items):
        sym = slot_symbol(seq, i)
        if sym in ("N", "M"):
            if allowed is not None and m.form not in allowed[sym]:
                return False
            if allowed is None and sym == "N" and m.form != "ne":
                return False
    return True
