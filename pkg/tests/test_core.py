import pytest
from hypothesis import given, strategies as st

from sorani.core import (
    CONSTRUCTIONS,
    PARADIGMS,
    PERSONS,
    FeatureBundle,
    FeatureError,
    Morpheme,
    MorphemeSequence,
    PersonNumber,
    is_vowel,
    load_inventory,
    marker_forms,
    nfc,
    parse_features,
    reverse_lookup,
    segments,
    validate_features,
)


def test_imperative_with_me_flavor_is_ok():
    f = FeatureBundle("present-tr", "IMP", agent="2SG", negation_flavor="me")
    assert validate_features(f) == []


def test_patient_on_intransitive_is_rejected():
    errs = validate_features(FeatureBundle("simple-past-intr", agent="1SG", patient="3PL"))
    assert any("patient" in e for e in errs)


def test_third_person_imperative_is_rejected():
    errs = validate_features(FeatureBundle("present-intr", "IMP", agent="3SG"))
    assert any("second-person" in e for e in errs)


@pytest.mark.parametrize(
    "bundle, fragment",
    [
        (FeatureBundle("simple-past-tr", agent="1SG"), "requires a patient"),
        (FeatureBundle("infinitive", agent="1SG"), "takes no agent"),
        (FeatureBundle("present-intr", "COND", agent="1SG"), "mood COND"),
        (FeatureBundle("present-tr", "IND", agent="1SG", negation_flavor="me"), "conflicts"),
        (FeatureBundle("simple-past-tr", agent="1SG", patient="3SG", voice="passive"), "passive"),
        (FeatureBundle("no-such", agent="1SG"), "unknown construction"),
    ],
)
def test_violations(bundle, fragment):
    assert any(fragment in e for e in validate_features(bundle))


@pytest.mark.parametrize(
    "mood, construction, voice, want",
    [
        ("IMP", "present-tr", "active", "me"),
        ("IMP", "present-intr", "passive", "ne"),
        ("IND", "present-intr", "active", "na"),
        ("SBJV", "present-intr", "active", "ne"),
        ("IND", "simple-past-tr", "active", "ne"),
    ],
)
def test_derived_negation(mood, construction, voice, want):
    f = FeatureBundle(construction, mood, agent="2SG", negation=True, voice=voice)
    assert f.derived_negation() == want


def test_affirmative_has_no_negation_prefix():
    assert FeatureBundle("present-tr", "IND", agent="1SG").derived_negation() is None


def test_flavor_implies_negation():
    assert FeatureBundle("present-tr", "IMP", agent="2SG", negation_flavor="me").negation


def test_resolved_fills_mood():
    f = FeatureBundle("present-tr", agent="1SG", negation_flavor="na").resolved()
    assert f.mood == "IND" and f.negation and f.negation_flavor is None


def test_parse_features_and_describe_round_trip():
    f = parse_features("simple-past-tr", ["agent=1PL", "patient=3SG", "negation=yes"])
    assert f.agent == PersonNumber(1, "PL")
    head, *rest = f.describe().split()
    assert parse_features(head, rest) == f


@pytest.mark.parametrize("pairs", [["agent"], ["agent=9XX"], ["negation=maybe"], ["colour=red"]])
def test_parse_features_errors(pairs):
    with pytest.raises(FeatureError):
        parse_features("present-tr", pairs)


def test_person_number_parse():
    assert PersonNumber.parse("2sg") == PersonNumber(2, "SG")
    with pytest.raises(ValueError):
        PersonNumber(4, "SG")


@pytest.mark.parametrize("series", sorted(PARADIGMS))
def test_paradigm_reverse_lookup_round_trips(series):
    for pn in PERSONS:
        for form in marker_forms(series, pn):
            assert pn in reverse_lookup(series, form)


def test_marker_variants():
    assert marker_forms("PM1", PersonNumber(2, "SG")) == ("î", "ît")
    assert marker_forms("PM1", PersonNumber(3, "SG")) == ("ê", "êt")
    assert marker_forms("PM4", PersonNumber(3, "PL")) == ("yan",)
    assert marker_forms("PM2", PersonNumber(1, "SG")) == ()


def test_unknown_series():
    with pytest.raises(ValueError):
        marker_forms("PM9", PERSONS[0])


def test_segments_treat_precomposed_letters_as_one():
    assert segments("dexwê") == ["d", "e", "x", "w", "ê"]
    # decomposed input is normalized first
    assert segments("ê") == ["ê"]
    assert is_vowel("î") and not is_vowel("y")


def test_morpheme_validation():
    with pytest.raises(ValueError):
        Morpheme("x", "suffixoid", "X")
    with pytest.raises(ValueError):
        Morpheme("", "inflectional-suffix", "")
    assert Morpheme("", "inflectional-suffix", "PAT.3SG").empty


def test_sequence_insert_keeps_stem_span():
    stem = Morpheme("girt", "root", "take")
    seq = MorphemeSequence((stem, Morpheme("in", "inflectional-suffix", "INF")), 0, 1)
    seq = seq.insert(0, Morpheme("ne", "inflectional-prefix", "NEG"))
    assert (seq.stem_start, seq.stem_end) == (1, 2)
    assert seq.underlying() == "ne·girt·in"
    with pytest.raises(ValueError):
        MorphemeSequence((stem,), 0, 2)


def test_inventory_ids_unique_and_nonempty():
    inv = load_inventory()
    assert len(inv) > 40
    assert all(e.id and e.kind for e in inv.values())


def test_every_construction_has_a_mood():
    assert all(c.moods for c in CONSTRUCTIONS.values())


@given(st.text(alphabet="abcçdeêfghiîjklłmnopqrřsştuûvwxyz", max_size=12))
def test_segments_rejoin(text):
    assert "".join(segments(text)) == nfc(text)
