"""Surface realization by the ordered alternation cascade, and its inverse."""
from __future__ import annotations

from collections.abc import Set as AbcSet
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .core import (
    BOUNDARY,
    LONG_VOWELS,
    ROUNDED,
    VOWELS,
    Morpheme,
    MorphemeSequence,
    is_consonant,
    segments,
)

DEFAULT_ORDER = ("copula-t", "imperative-r", "stem-e-a", "stem-o-wa", "emphatic-i", "indefinite-y", "vowel-merge", "vowel-drop", "glide", "shortening")
# The reading where the general glide rule beats the emphatic and indefinite rules (nameyêk, nameyîş); accepted in analysis only.
GLIDE_ORDER = tuple(r for r in DEFAULT_ORDER if r not in ("emphatic-i", "indefinite-y"))
MAX_PASSES = 32


@dataclass(frozen=True)
class RuleStep:
    rule: str
    position: int
    before: str
    after: str


@dataclass(frozen=True)
class Realization:
    surface: str
    steps: tuple
    underlying: str
    pieces: tuple  # surface material owned by each morpheme
    order: tuple = DEFAULT_ORDER

    def __str__(self) -> str:
        return self.surface


@dataclass(frozen=True)
class RewriteRule:
    id: str
    pattern: str
    replacement: str
    guard: str
    apply: Callable


class _State:
    def __init__(self, seq: MorphemeSequence):
        self.seq = seq
        self.segs: list[str] = []
        self.owner: list[int] = []
        for i, m in enumerate(seq.items):
            for s in segments(m.form):
                self.segs.append(s)
                self.owner.append(i)
        self.steps: list[RuleStep] = []
        self.rule = ""

    def morph(self, j: int) -> Morpheme:
        return self.seq.items[self.owner[j]]

    def starts_morph(self, j: int) -> bool:
        return j == 0 or self.owner[j - 1] != self.owner[j]

    def in_stem(self, j: int) -> bool:
        return self.seq.in_stem(self.owner[j])

    def splice(self, start: int, end: int, new: list[str], owners: list[int]) -> None:
        before = "".join(self.segs[start:end])
        self.segs[start:end] = new
        self.owner[start:end] = owners
        self.steps.append(RuleStep(self.rule, start, before, "".join(new)))


def _is_cop3sg(m: Morpheme) -> bool:
    return m.series == "COP" and m.form == "e"


def _is_imp2sg(m: Morpheme) -> bool:
    return m.series == "PM2" and m.form == "e"


def _is_pm1_3sg(m: Morpheme) -> bool:
    return m.series == "PM1" and m.form in ("ê", "êt")


def _takes_consonantal_glide(m: Morpheme) -> bool:
    # person markers, the copula, the participle vowel and the Izafa î
    return m.series is not None or m.gloss in ("PTCP", "EZ")


def _nominal(st: _State) -> bool:
    return st.seq.pos != "verb"


def _stem_final(st: _State, j: int) -> bool:
    return st.in_stem(j) and (j + 1 == len(st.segs) or not st.in_stem(j + 1))


def _consonant_before(st: _State, k: int) -> bool:
    """Consonant at k, or a morph-final i at k that vowel-drop will remove after a consonant (bi·e)."""
    if is_consonant(st.segs[k]):
        return True
    return st.segs[k] == "i" and k >= 1 and is_consonant(st.segs[k - 1]) and st.owner[k] != st.owner[k + 1]


# Each rule inspects the junction before segment j and rewrites in place.
# It returns True when it fired.


def rule_copula_t(st: _State, j: int) -> bool:
    """Directional e after the 3SG copula becomes te."""
    if st.segs[j - 1] == "e" and _is_cop3sg(st.morph(j - 1)) and st.segs[j] == "e" and st.morph(j).gloss == "DIR":
        st.splice(j, j, ["t"], [st.owner[j]])
        return True
    return False


def rule_imperative_r(st: _State, j: int) -> bool:
    """ewe after the 2SG imperative e becomes rewe."""
    if st.segs[j - 1] == "e" and _is_imp2sg(st.morph(j - 1)) and st.morph(j).form == "ewe" and st.starts_morph(j) and st.segs[j] == "e":
        st.splice(j, j, ["r"], [st.owner[j]])
        return True
    return False


def rule_stem_e_a(st: _State, j: int) -> bool:
    """Present stem in consonant + e, then 3SG ê(t): Ce·ê(t) becomes Ca(t)."""
    if (
        st.seq.stem_tense == "present"
        and j >= 2
        and st.segs[j - 1] == "e"
        and _stem_final(st, j - 1)
        and _consonant_before(st, j - 2)
        and st.segs[j] == "ê"
        and _is_pm1_3sg(st.morph(j))
    ):
        st.splice(j - 1, j + 1, ["a"], [st.owner[j - 1]])
        return True
    return False


def rule_stem_o_wa(st: _State, j: int) -> bool:
    """Present stem in o, then 3SG ê(t): o·ê(t) becomes wa(t)."""
    if (
        st.seq.stem_tense == "present"
        and st.segs[j - 1] == "o"
        and _stem_final(st, j - 1)
        and st.segs[j] == "ê"
        and _is_pm1_3sg(st.morph(j))
    ):
        st.splice(j - 1, j + 1, ["w", "a"], [st.owner[j - 1], st.owner[j]])
        return True
    return False


def rule_emphatic_i(st: _State, j: int) -> bool:
    """Emphatic îş after a vowel-final noun loses its î."""
    if _nominal(st) and st.segs[j - 1] in VOWELS and st.segs[j] == "î" and st.morph(j).gloss == "EMPH" and st.starts_morph(j):
        st.splice(j, j + 1, [], [])
        return True
    return False


def rule_indefinite_y(st: _State, j: int) -> bool:
    """Indefinite êk after a vowel-final noun becomes yek."""
    if _nominal(st) and st.segs[j - 1] in VOWELS and st.segs[j] == "ê" and st.morph(j).gloss == "INDF.SG" and st.starts_morph(j):
        st.splice(j, j + 1, ["y", "e"], [st.owner[j], st.owner[j]])
        return True
    return False


def rule_vowel_merge(st: _State, j: int) -> bool:
    """Two identical vowels across a boundary: the left one drops."""
    if st.segs[j - 1] in VOWELS and st.segs[j - 1] == st.segs[j]:
        st.splice(j - 1, j, [], [])
        return True
    return False


def rule_vowel_drop(st: _State, j: int) -> bool:
    """Short i drops next to a vowel; so does a determiner's e after a vowel."""
    left, right = st.segs[j - 1], st.segs[j]
    if left == "i" and right in VOWELS:
        st.splice(j - 1, j, [], [])
        return True
    if right == "i" and left in VOWELS:
        st.splice(j, j + 1, [], [])
        return True
    if left in VOWELS and right == "e" and st.starts_morph(j) and st.morph(j).gloss in ("DEF.SG", "DEF.PL"):
        st.splice(j, j + 1, [], [])
        return True
    return False


def glide_for(left: str, right: str) -> str:
    return "w" if left in ROUNDED or right in ROUNDED else "y"


def rule_glide(st: _State, j: int) -> bool:
    """Vowel hiatus: an inflectional î/û turns consonantal, else a glide is inserted."""
    left, right = st.segs[j - 1], st.segs[j]
    if left not in VOWELS or right not in VOWELS or left == right:
        return False
    if right in ("î", "û") and st.starts_morph(j) and _takes_consonantal_glide(st.morph(j)):
        st.splice(j, j + 1, ["y" if right == "î" else "w"], [st.owner[j]])
        return True
    st.splice(j, j, [glide_for(left, right)], [st.owner[j]])
    return True


def rule_shortening(st: _State, j: int) -> bool:
    """V:CiC + V becomes V:CCV after the stem."""
    if j < 4 or st.segs[j] not in VOWELS:
        return False
    v, c1, i, c2 = st.segs[j - 4 : j]
    if v in LONG_VOWELS and is_consonant(c1) and i == "i" and is_consonant(c2):
        if not st.in_stem(j - 3) and not st.in_stem(j - 2):
            st.splice(j - 2, j - 1, [], [])
            return True
    return False


RULES = {
    r.id: r
    for r in (
        RewriteRule("copula-t", "e · e", "e · te", "left is the 3SG copula, right is the directional", rule_copula_t),
        RewriteRule("imperative-r", "e · ewe", "e · rewe", "left is the 2SG imperative marker", rule_imperative_r),
        RewriteRule("stem-e-a", "Ce · ê(t)", "Ca(t)", "present stem, right is the 3SG marker ê/êt", rule_stem_e_a),
        RewriteRule("stem-o-wa", "o · ê(t)", "wa(t)", "present stem, right is the 3SG marker ê/êt", rule_stem_o_wa),
        RewriteRule("emphatic-i", "V · îş", "V · ş", "nominal host, right is the emphatic", rule_emphatic_i),
        RewriteRule("indefinite-y", "V · êk", "V · yek", "nominal host, right is the indefinite", rule_indefinite_y),
        RewriteRule("vowel-merge", "V1 · V1", "· V1", "", rule_vowel_merge),
        RewriteRule("vowel-drop", "i · V | V · i | V · e", "V", "the e case needs a determiner suffix", rule_vowel_drop),
        RewriteRule("glide", "V1 · V2", "V1 · GV2 | V1 · y/w", "y/w replaces î/û of an inflectional marker", rule_glide),
        RewriteRule("shortening", "V:Ci C · V", "V:C C · V", "the first C is not in the stem", rule_shortening),
    )
}


def format_rule_table() -> str:
    lines = ["id\tpattern\treplacement\tguard"]
    lines += [f"{r.id}\t{r.pattern}\t{r.replacement}\t{r.guard}" for r in RULES.values()]
    return "\n".join(lines)


def _junctions(st: "_State", start: int) -> list[int]:
    # every rule needs a vowel right of the boundary
    owner, segs = st.owner, st.segs
    return [j for j in range(max(start, 1), len(owner)) if owner[j - 1] != owner[j] and segs[j] in VOWELS]


# Necessary conditions on the (left, right) segments of a junction, to skip hopeless calls.
_QUICK = {
    "copula-t": lambda a, b: a == "e" and b == "e",
    "imperative-r": lambda a, b: a == "e" and b == "e",
    "stem-e-a": lambda a, b: a == "e" and b == "ê",
    "stem-o-wa": lambda a, b: a == "o" and b == "ê",
    "emphatic-i": lambda a, b: a in VOWELS and b == "î",
    "indefinite-y": lambda a, b: a in VOWELS and b == "ê",
    "vowel-merge": lambda a, b: a == b,
    "vowel-drop": lambda a, b: a in VOWELS and (a == "i" or b in ("i", "e")),
    "glide": lambda a, b: a in VOWELS and a != b,
    "shortening": lambda a, b: a not in VOWELS,
}


def apply_rule(st: _State, rule_id: str, todo: Optional[list[int]] = None) -> bool:
    """One left-to-right pass of a single rule over every junction."""
    fn = RULES[rule_id].apply
    quick = _QUICK[rule_id]
    segs = st.segs
    todo = [j for j in (todo if todo is not None else _junctions(st, 1)) if quick(segs[j - 1], segs[j])]
    if not todo:
        return False
    st.rule = rule_id
    fired = False
    budget = 4 * len(st.segs) + 8
    while todo and budget:
        budget -= 1
        j = todo.pop(0)
        if j < len(st.segs) and st.owner[j - 1] != st.owner[j] and fn(st, j):
            fired = True
            # a deletion can expose a fresh junction just to the left
            todo = _junctions(st, j - 1)
    return fired


# Morphologically conditioned rules only matter when their trigger is present.
def _relevant(seq: MorphemeSequence) -> set[str]:
    glosses = {m.gloss for m in seq.items}
    marked = {(m.series, m.form) for m in seq.items if m.series}
    pm1 = any(series == "PM1" for series, _ in marked)
    out = set()
    if "DIR" in glosses and ("COP", "e") in marked:
        out.add("copula-t")
    if ("PM2", "e") in marked:
        out.add("imperative-r")
    if seq.stem_tense == "present" and pm1:
        out |= {"stem-e-a", "stem-o-wa"}
    if seq.pos != "verb":
        out |= {"emphatic-i", "indefinite-y"}
    return out


_CONDITIONED = frozenset({"copula-t", "imperative-r", "stem-e-a", "stem-o-wa", "emphatic-i", "indefinite-y"})


def realize(seq: MorphemeSequence, order: Iterable[str] = DEFAULT_ORDER) -> Realization:
    """Apply the cascade in the given order, repeating passes to a fixpoint."""
    order = tuple(order)
    unknown = [r for r in order if r not in RULES]
    if unknown:
        raise ValueError(f"unknown rules {unknown}")
    st = _State(seq)
    relevant = _relevant(seq)
    order = tuple(r for r in order if r not in _CONDITIONED or r in relevant)
    for _ in range(MAX_PASSES):
        changed = False
        todo = _junctions(st, 1)
        for rid in order:
            if not todo:
                break
            if apply_rule(st, rid, todo):
                changed = True
                todo = _junctions(st, 1)
        if not changed:
            break
    else:
        raise RuntimeError(f"cascade did not settle on {seq.underlying()!r}")
    acc = [""] * len(seq.items)
    for seg, o in zip(st.segs, st.owner):
        acc[o] += seg
    pieces = tuple(acc)
    return Realization("".join(st.segs), tuple(st.steps), seq.underlying(), pieces, order)


def surface(seq: MorphemeSequence, order: Iterable[str] = DEFAULT_ORDER) -> str:
    return realize(seq, order).surface


def replay(underlying: str, steps: Iterable[RuleStep]) -> str:
    """Apply recorded steps to a boundary-free underlying string."""
    segs = segments(underlying.replace(BOUNDARY, ""))
    for step in steps:
        old = segments(step.before)
        if segs[step.position : step.position + len(old)] != old:
            raise ValueError(f"step {step} does not match at {step.position}")
        segs[step.position : step.position + len(old)] = segments(step.after)
    return "".join(segs)


# ---------------------------------------------------------------------------
# Inverse direction


def build_trie(forms: Iterable[str]) -> dict:
    trie: dict = {}
    for form in forms:
        segs = segments(form)
        if not segs:
            continue
        node = trie
        for s in segs:
            node = node.setdefault(s, {})
        node[None] = True
    return trie


_VOCAB_TRIE: Optional[dict] = None


def default_vocabulary() -> set[str]:
    """Every morph form the seed lexicon, the inventory and the marker paradigms can supply."""
    from .core import PARADIGMS, load_inventory
    from .lexicon import seed_lexicon
    from .verbs import PROGRESSIVE_PATIENT_1SG

    out = {e.latin for e in load_inventory().values()} | {PROGRESSIVE_PATIENT_1SG}
    for par in PARADIGMS.values():
        for forms in par.cells.values():
            out.update(forms)
    for lex in seed_lexicon():
        if not lex.is_verb:
            out.add(lex.lemma)
            continue
        for tense in ("past", "present"):
            out.update(m.form for m in lex.stem_morphs(tense))
        if lex.particle:
            out.add(lex.particle)
        for forms in lex.irregulars.values():
            out.update(forms)
    out.discard("")
    return out


def _default_trie() -> dict:
    global _VOCAB_TRIE
    if _VOCAB_TRIE is None:
        _VOCAB_TRIE = build_trie(default_vocabulary())
    return _VOCAB_TRIE


class _Unrealizer:
    """Depth-first search from a surface string back to boundary-annotated underlying strings.

    Every inverse edit sits at a morph edge, as every rule fires at a junction.
    With a trie the underlying string must split into vocabulary morphs and all
    boundaries are marked; without one, boundaries appear only at edit sites.

    Search state: si surface index, node trie node, cur open morph, done closed
    morphs, left last surviving segment, prev last underlying segment, req what
    the next surviving segment must be (a vowel, or "V" for any vowel), cont
    set when the open morph must go on with a surviving segment, lock set when
    the next move must consume surface material, chain consecutive deletions.
    """

    def __init__(self, surface: str, trie: Optional[dict], max_undo: int, limit: int, max_chain: int = 4, target: Optional[str] = None):
        self.s = segments(surface)
        self.target = target
        self.max_chain = max_chain
        self.trie = trie
        self.free = trie is None
        self.max_undo = max_undo
        self.limit = limit
        self.out: set[str] = set()
        self.truncated = False

    def child(self, node, seg):
        return {} if self.free else node.get(seg)

    def terminal(self, node) -> bool:
        return self.free or None in node

    def root(self):
        return {} if self.free else self.trie

    def run(self) -> set[str]:
        self.walk(0, self.root(), (), (), 0, None, None, None, False, False, 0)
        return self.out

    @staticmethod
    def fits(req, seg: str) -> bool:
        return req is None or seg == req or (req == "V" and seg in VOWELS)

    def walk(self, si, node, cur, done, edits, left, prev, req, cont, lock, chain):
        if len(self.out) >= self.limit:
            self.truncated = True
            return
        if self.target is not None:
            partial = BOUNDARY.join(done + ("".join(cur),)) if cur else "".join(d + BOUNDARY for d in done)
            if not self.target.startswith(partial):
                return
        s = self.s
        n = len(s)
        if si == n:
            if cur and self.terminal(node) and req is None and not cont and not lock:
                self.out.add(BOUNDARY.join(done + ("".join(cur),)))
            return
        seg = s[si]
        nxt = s[si + 1] if si + 1 < n else None
        if not self.free and cur and self.terminal(node) and not cont:
            self.walk(si, self.root(), (), done + ("".join(cur),), edits, left, prev, req, cont, lock, chain)
        # copy one segment unchanged
        c = self.child(node, seg)
        if c is not None and self.fits(req, seg):
            self.walk(si + 1, c, cur + (seg,), done, edits, seg, seg, None, False, False, 0)
        if edits >= self.max_undo or lock:
            return
        e = edits + 1
        lv = left in VOWELS
        if not cont and chain < self.max_chain:
            # a morph-final vowel deleted before an identical vowel, or i before any vowel (vowel-merge, vowel-drop)
            for v in VOWELS:
                c = self.child(node, v)
                if c is not None and self.terminal(c) and self.fits(req, v):
                    self.walk(si, self.root(), (), done + ("".join(cur + (v,)),), e, left, v, "V" if v == "i" else v, False, False, chain + 1)
                    if v == "i" and prev is not None and is_consonant(prev) and is_consonant(seg):
                        # the i of V:CiC closing a morph (shortening)
                        self.walk(si, self.root(), (), done + ("".join(cur + (v,)),), e, left, v, req, False, True, chain + 1)
        if cont:
            return
        opening = not cur and bool(done)
        if self.free and cur:
            node, done, cur, opening = self.root(), done + ("".join(cur),), (), True
        if opening:
            if chain < self.max_chain:
                # a morph-initial vowel deleted after a vowel (vowel-drop, emphatic-i) or inside V:CiC (shortening)
                for v in ("i", "e", "î"):
                    if prev in VOWELS or (v == "i" and prev is not None and is_consonant(prev) and is_consonant(seg)):
                        c = self.child(node, v)
                        if c is not None:
                            self.walk(si, c, (v,), done, e, left, v, req, v != "i", False, chain + 1)
            if lv:
                # an inserted glide or consonant (glide, copula-t, imperative-r)
                if seg in ("y", "w", "t", "r") and nxt in VOWELS:
                    self.walk(si + 1, node, cur, done, e, left, prev, req, False, True, chain)
                # î/û read as y/w (glide)
                if seg in ("y", "w"):
                    v = "î" if seg == "y" else "û"
                    c = self.child(node, v)
                    if c is not None and self.fits(req, v):
                        self.walk(si + 1, c, (v,), done, e, v, v, None, False, False, 0)
                # êk read as yek (indefinite-y)
                if seg == "y" and nxt == "e" and self.fits(req, "ê"):
                    c = self.child(node, "ê")
                    if c is not None:
                        self.walk(si + 2, c, ("ê",), done, e, "ê", "ê", None, False, False, 0)
        elif self.free:
            return
        # Ce·ê becomes Ca; o·ê becomes wa (stem-e-a, stem-o-wa)
        if seg == "a" and left is not None and is_consonant(left):
            self._split_pair(si + 1, node, cur, done, e, "e", req)
        if seg == "w" and nxt == "a":
            self._split_pair(si + 2, node, cur, done, e, "o", req)

    def _split_pair(self, si, node, cur, done, edits, v, req):
        if not self.fits(req, v):
            return
        c = self.child(node, v)
        if c is None or not self.terminal(c):
            return
        right = self.child(self.root(), "ê")
        if right is not None:
            self.walk(si, right, ("ê",), done + ("".join(cur + (v,)),), edits, "ê", "ê", None, False, False, 0)


class UnderlyingSet(AbcSet):
    """The candidates for one surface form.

    Membership runs a search pruned to the queried string, so it stays cheap
    even when the full set is large; iteration enumerates everything.
    """

    def __init__(self, surface: str, trie: Optional[dict], max_undo: int, limit: int):
        self.surface = surface
        self._args = (trie, max_undo, limit)
        self._all: Optional[frozenset] = None
        self.truncated = False

    def _search(self, target=None) -> _Unrealizer:
        trie, max_undo, limit = self._args
        u = _Unrealizer(self.surface, trie, max_undo, limit, target=target)
        if self.surface:
            u.run()
        return u

    def __contains__(self, item) -> bool:
        if not isinstance(item, str):
            return False
        if item == self.surface:
            return True
        if self._all is not None:
            return item in self._all
        return item in self._search(item).out

    def _materialize(self) -> frozenset:
        if self._all is None:
            u = self._search()
            self.truncated = u.truncated
            self._all = frozenset(u.out | {self.surface})
        return self._all

    def __iter__(self):
        return iter(sorted(self._materialize()))

    def __len__(self) -> int:
        return len(self._materialize())


def unrealize(surface: str, vocabulary: Optional[Iterable[str]] = None, max_undo: int = 5, free: bool = False, limit: int = 1_000_000) -> UnderlyingSet:
    """Candidate underlying strings whose realization can yield surface.

    The identity candidate is always present. With free=True boundaries
    are marked only where an alternation is undone; otherwise the string is
    split into vocabulary morphs (the seed vocabulary by default).
    """
    from .core import nfc

    if free:
        trie = None
    elif vocabulary is None:
        trie = _default_trie()
    else:
        trie = build_trie(vocabulary)
    return UnderlyingSet(nfc(surface), trie, max_undo, limit)
