import pytest

from sorani.lexicon import (
    DP1,
    IrregularPassiveError,
    LexiconError,
    build_lexeme,
    decompose_stem,
    derive_passive_stems,
    derive_past_stem,
    load_lexicon,
    realized_splits,
)
from sorani.phonology import surface
from sorani.core import Morpheme, MorphemeSequence

HEADER = "lemma\troot\tpast\tpresent\ttransitivity\tparticle\tirregulars\n"


def row(*cols):
    return "\t".join(cols) + "\n"


def test_load_spec_rows():
    text = HEADER + row("girtin", "gir/gi", "girt", "gir", "transitive") + row("kêlan", "kêl", "kêla", "kêl", "transitive")
    text += row("çûn", "çi", "çû", "çi", "intransitive", "", "IMP.2SG=biço")
    lx = load_lexicon(text)
    assert len(lx) == 3
    assert lx.get("girtin").root == ("gir", "gi")
    assert lx.get("kêlan").transitive
    assert lx.get("çûn").irregulars == {"IMP.2SG": ("biço",)}
    assert [x.lemma for x in lx.by_past_stem("girt")] == ["girtin"]
    assert [x.lemma for x in lx.by_present_stem("çi")] == ["çûn"]


@pytest.mark.parametrize(
    "cols, col",
    [
        (("girtin", "gir", "girt", "gir"), 5),
        (("girtin", "gir", "girt", "gir", "ditransitive"), 5),
        (("gertin", "gir", "girt", "gir", "transitive"), 1),
        (("girtin", "xyz", "girt", "gir", "transitive"), 3),
        (("girtin", "gir", "girt", "gir", "transitive", "zz"), 6),
        (("girtin", "gir", "girt", "gir", "transitive", "", "FUT=x"), 7),
        (("", "gir", "girt", "gir", "transitive"), 1),
    ],
)
def test_row_errors_report_column(cols, col):
    with pytest.raises(LexiconError) as err:
        build_lexeme(list(cols), 4)
    assert (err.value.row, err.value.col) == (4, col)


def test_duplicate_lemma_rejected():
    r = row("girtin", "gir", "girt", "gir", "transitive")
    with pytest.raises(LexiconError, match="duplicate"):
        load_lexicon(HEADER + r + r)


def test_comments_and_blank_lines_skipped():
    lx = load_lexicon("# seed\n\n" + HEADER + row("kewtin", "kew", "kewt", "kew", "intransitive"))
    assert "kewtin" in lx


@pytest.mark.parametrize("inf, stem", [("birdin", "bird"), ("kêlan", "kêla"), ("çûn", "çû"), ("girtin", "girt")])
def test_derive_past_stem(inf, stem):
    assert derive_past_stem(inf) == stem


@pytest.mark.parametrize("bad", ["kêl", "xi", "in", ""])
def test_derive_past_stem_rejects(bad):
    with pytest.raises(ValueError):
        derive_past_stem(bad)


def test_decompose_sutand():
    # brute force over the inventory, longest suffix first
    assert decompose_stem("sûtand", "past") == [("sût", "and"), ("sûtan", "d"), ("sûtand", "∅")]


def test_decompose_examples():
    assert ("kew", "t") in decompose_stem("kewt", "past")
    assert ("sût", "ên") in decompose_stem("sûtên", "present")
    with pytest.raises(ValueError):
        decompose_stem("kewt", "future")


@pytest.mark.parametrize("stem", ["kewt", "sûtand", "bird", "x"])
def test_decompose_matches_brute_force(stem):
    from sorani.lexicon import PAST_SUFFIXES

    brute = {(stem[:i], stem[i:] or "∅") for i in range(1, len(stem) + 1) if stem[i:] in PAST_SUFFIXES}
    assert set(decompose_stem(stem, "past")) == brute


@pytest.mark.parametrize(
    "present, want",
    [("hên", ("hêndira", "hêndirê")), ("kêl", ("kêldira", "kêldirê")), ("birjên", ("birjêndira", "birjêndirê"))],
)
def test_passive_stems(present, want):
    assert derive_passive_stems(present) == want


def test_irregular_passive_refused(lexicon):
    with pytest.raises(IrregularPassiveError):
        derive_passive_stems(lexicon.get("birdin"))
    with pytest.raises(ValueError):
        derive_passive_stems(lexicon.get("kewtin"))


def test_seed_lemma_is_past_stem_plus_in(lexicon):
    for x in lexicon.verbs():
        items = []
        if x.particle:
            items.append(x.particle_morph())
        items += [Morpheme(x.past_stem, "root", "STEM"), Morpheme("in", "inflectional-suffix", "INF")]
        if x.derived_ewe:
            items.append(Morpheme("ewe", "derivational-suffix", "DER"))
        start = 1 if x.particle else 0
        assert surface(MorphemeSequence(items, start, start + 1)) == x.lemma


def test_seed_stems_share_a_listed_root(lexicon):
    # suppletive verbs (bûn, hatin, xwardin, ...) reach it only through different alternates
    for x in lexicon.verbs():
        if x.voice == "passive":
            continue
        past = {r for r, _ in realized_splits(x.past_stem, "past", x.root)}
        present = {r for r, _ in realized_splits(x.present_stem, "present", x.root)}
        assert past and present and past | present <= set(x.root)


def test_seed_particles_in_dp1(lexicon):
    assert all(x.particle in DP1 for x in lexicon.verbs() if x.particle)


def test_passive_stem_shapes(lexicon):
    for x in lexicon.verbs():
        if x.transitive and "PASS" not in x.irregulars:
            past, present = derive_passive_stems(x)
            assert past.endswith("a") and present.endswith("ê")
