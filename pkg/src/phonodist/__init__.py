"""Phonetic encoding and distance toolkit.

Three ways of relating words by sound: SOUNDEX name codes, feature-weighted
phoneme distances with edit-distance alignment, and autosegmental tier
automata compared by intersection.
"""

from .alignment import Alignment, knn, word_distance
from .autoseg import (
    AutosegWord,
    Pinning,
    TierAutomaton,
    compatible,
    from_sequence,
    intersect,
    intersection_cost_profile,
    is_empty,
)
from .features import WeightProfile, phoneme_distance, template_distance
from .inventory import (
    FeatureBundle,
    Inventory,
    Phoneme,
    PhonemeSequence,
    default_inventory,
    load_inventory,
    parse_sequence,
)
from .kernels import BACKEND
from .soundex import SoundexCode, code_space_size, collisions, encode

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "AutosegWord",
    "BACKEND",
    "FeatureBundle",
    "Inventory",
    "Phoneme",
    "PhonemeSequence",
    "Pinning",
    "SoundexCode",
    "TierAutomaton",
    "WeightProfile",
    "code_space_size",
    "collisions",
    "compatible",
    "default_inventory",
    "encode",
    "from_sequence",
    "intersect",
    "intersection_cost_profile",
    "is_empty",
    "knn",
    "load_inventory",
    "parse_sequence",
    "phoneme_distance",
    "template_distance",
    "word_distance",
]
