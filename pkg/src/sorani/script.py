"""Conversion between the Latin and Arabic-based Sorani scripts."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import VOWELS, nfc, segments

HAMZA = "ئ"
GLIDES = ("y", "w")
# y and w must touch one of these; short i is too weak to carry a glide.
FULL_VOWELS = VOWELS - {"i"}
DEFAULT_BOUND = 64

# Arabic letters that read as more than one Latin segment.
AMBIGUOUS = {
    "و": ("w", "u"),
    "ی": ("y", "î"),
    "ه": ("h", "e"),
}
NORMALIZE = {"ك": "ک", "ي": "ی", "ى": "ی", "ة": "ە", "ھ": "ه"}
# Harakat, tatweel and zero-width joiners carry no segment.
IGNORED = {chr(c) for c in range(0x064B, 0x0653)} | {"ـ", "‌", "‍"}


@dataclass(frozen=True)
class CharRow:
    ipa: str
    latin: str
    arabic: str
    notes: str


@lru_cache(maxsize=1)
def char_table() -> tuple[CharRow, ...]:
    text = resources.files("sorani").joinpath("data/chartable.tsv").read_text(encoding="utf-8")
    return tuple(CharRow(**{k: nfc(v or "") for k, v in r.items()}) for r in csv.DictReader(text.splitlines(), delimiter="\t"))


@lru_cache(maxsize=1)
def _latin_map() -> dict[str, str]:
    return {r.latin: r.arabic for r in char_table() if r.latin}


@lru_cache(maxsize=1)
def _arabic_map() -> dict[str, tuple[str, ...]]:
    out: dict[str, list[str]] = {}
    for r in char_table():
        if r.latin and r.arabic and len(r.arabic) == 1:
            out.setdefault(r.arabic, []).append(r.latin)
    out["ه"] = list(AMBIGUOUS["ه"])
    return {k: tuple(v) for k, v in out.items()}


def latin_to_arabic(text: str, hamza: bool = True) -> str:
    """Deterministic Latin to Arabic-script conversion.

    With hamza=False a leading vowel gets no seat, as for a bound suffix.
    """
    table = _latin_map()
    out: list[str] = []
    prev_vowel = False
    at_start = True
    for seg in segments(text.lower()):
        if seg == "i":
            prev_vowel, at_start = True, False
            continue
        if seg in table:
            if seg in VOWELS and (prev_vowel or (at_start and hamza)):
                out.append(HAMZA)
            out.append(table[seg])
            prev_vowel, at_start = seg in VOWELS, False
        elif seg.isalpha():
            raise ValueError(f"character outside the Latin alphabet: {seg!r}")
        else:
            out.append(seg)
            prev_vowel = False
            at_start = not seg.isalnum() and seg != "'"
    return "".join(out)


# Sonority ranks for consonants; unlisted letters rank as stops.
SONORITY = {**dict.fromkeys("wy", 5), **dict.fromkeys("lłrř", 4), **dict.fromkeys("mn", 3),
            **dict.fromkeys("fvsşzjxh'", 2)}


def cluster_ok(run: list[str], initial: bool, final: bool) -> bool:
    """Whether a consonant run splits as coda + onset of (C)(C)V(C)(C) syllables.

    A two-consonant coda falls in sonority; a two-consonant onset ends in a
    glide. A run that is neither initial nor final may still be growing, so
    its onset part only has to be a possible onset prefix.
    """
    if initial and final:
        return True  # a word with no vowel, such as a letter name
    for k in range(0, min(2, len(run)) + 1):
        coda, onset = run[:k], run[k:]
        if (initial and coda) or (final and onset):
            continue
        if len(coda) == 2 and SONORITY.get(coda[0], 1) <= SONORITY.get(coda[1], 1):
            continue
        if len(onset) > 2 or (len(onset) == 2 and onset[1] not in GLIDES):
            continue
        return True
    return False


class Candidates(list):
    """Candidate readings; overflow is set when the bound cut the search."""

    overflow: bool = False


def normalize_arabic(text: str) -> str:
    text = nfc(text)
    return "".join(NORMALIZE.get(ch, ch) for ch in text if ch not in IGNORED)


def _options(chars: str, i: int) -> list[tuple[str, int]]:
    ch = chars[i]
    table = _arabic_map()
    if ch == "و":
        # a doubled waw is the spelling of û; short u never touches w
        if i + 1 < len(chars) and chars[i + 1] == "و":
            return [("û", 2)]
        return [("w", 1), ("u", 1)]
    if ch in table:
        return [(lat, 1) for lat in table[ch]]
    return []


def arabic_to_latin(text: str, bound: int = DEFAULT_BOUND) -> Candidates:
    """All Latin readings of an Arabic-script string, up to bound.

    Short i is never written, so one may sit at any consonant-consonant
    juncture. Readings are pruned by phonotactics: vowels are never adjacent
    without a written seat, the only glide cluster is w·y after a full vowel,
    a glide touches a full vowel, a doubled waw is û, and consonant runs
    split into a coda and an onset (see cluster_ok).
    """
    chars = normalize_arabic(text)
    found: dict[str, None] = {}
    result = Candidates()

    def glide_ok(out: list[str], nxt: str | None) -> bool:
        if nxt in GLIDES and out and out[-1] in GLIDES:
            # only w·y between full vowels (pyawyan, dawyane)
            return (out[-1], nxt) == ("w", "y") and len(out) >= 2 and out[-2] in FULL_VOWELS
        if not out or out[-1] not in GLIDES:
            return True
        if len(out) >= 2 and out[-2] in FULL_VOWELS:
            return True
        return nxt is not None and nxt in FULL_VOWELS

    def run_ok(out: list[str], final: bool) -> bool:
        run: list[str] = []
        for x in reversed(out):
            if x in VOWELS or not (x.isalpha() or x == "'"):
                break
            run.append(x)
        initial = len(run) == len(out) or not (out[-len(run) - 1].isalpha() or out[-len(run) - 1] == "'")
        return not run or cluster_ok(run[::-1], initial, final)

    def walk(i: int, out: list[str], seated: bool) -> bool:
        if len(found) >= bound:
            result.overflow = True
            return False
        if i == len(chars):
            if seated or not glide_ok(out, None) or not run_ok(out, True):
                return True
            found.setdefault("".join(out), None)
            return True
        ch = chars[i]
        if ch == HAMZA:
            return seated or walk(i + 1, out, True)
        opts = _options(chars, i)
        if not opts:
            if ch.isalpha():
                raise ValueError(f"character outside the Arabic-script alphabet: {ch!r}")
            if seated or not glide_ok(out, None) or not run_ok(out, True):
                return True
            return walk(i + 1, out + [ch], False)
        word_start = not out or not (out[-1].isalpha() or out[-1] == "'")
        for seg, n in opts:
            if seg in VOWELS:
                if seated != (word_start or out[-1] in VOWELS):
                    continue
                if not glide_ok(out, seg):
                    continue
                if not walk(i + n, out + [seg], False):
                    return False
                continue
            if seated:
                continue
            if word_start or out[-1] in VOWELS:
                if glide_ok(out, seg) and not walk(i + n, out + [seg], False):
                    return False
                continue
            # consonant after consonant: with or without Bizroke
            initial = len(out) == 1 or not (out[-2].isalpha() or out[-2] == "'")
            if (not initial or seg in ("w", "y")) and glide_ok(out, seg) and run_ok(out + [seg], False):
                if not walk(i + n, out + [seg], False):
                    return False
            if glide_ok(out, "i") and not walk(i + n, out + ["i", seg], False):
                return False
        return True

    walk(0, [], False)
    result.extend(found)
    return result
