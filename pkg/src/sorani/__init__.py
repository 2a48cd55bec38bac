"""Sorani Kurdish morphological generator and analyzer."""

from .analyzer import Analysis, Analyzer, analyze, gloss
from .core import FeatureBundle, Morpheme, MorphemeSequence, PersonNumber, parse_features
from .lexicon import Lexeme, Lexicon, load_lexicon, seed_lexicon
from .nominal import (
    IzafaLink,
    NominalFeatures,
    NounState,
    analyze_degree,
    analyze_izafa,
    attach_izafa,
    grade,
    inflect_noun,
)
from .phonology import realize, unrealize
from .script import arabic_to_latin, latin_to_arabic
from .verbs import GenerationOptions, generate_verb, paradigm, realize_verb

__version__ = "0.1.0"
