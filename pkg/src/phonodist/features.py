"""Feature-weighted phoneme distance and fixed-length template comparison.

Each feature on which two phonemes disagree contributes its weight; the
multi-valued features (place, manner, height) score their full weight on any
mismatch.  Word templates of equal length are compared position by position,
with optional onset and stress multipliers on top.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from functools import lru_cache

import numpy as np

from .errors import LengthMismatchError, MixedInventoryError, ParseError
from .inventory import FEATURE_NAMES


@dataclass(frozen=True)
class WeightProfile:
    place: float = 7.0
    manner: float = 6.0
    height: float = 5.0
    voicing: float = 4.0
    syllabic: float = 1.0
    nasal: float = 1.0
    lateral: float = 1.0
    rounded: float = 1.0
    sibilant: float = 0.0
    indel_cost: float = 8.0
    onset_multiplier: float = 1.0
    stress_multiplier: float = 1.0

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            object.__setattr__(self, f.name, value)
            if value != value:
                raise ValueError(f"{f.name} is NaN")
            if f.name.endswith("_multiplier"):
                if value <= 0:
                    raise ValueError(f"{f.name} must be > 0, got {value}")
            elif value < 0:
                raise ValueError(f"{f.name} must be >= 0, got {value}")

    @property
    def feature_weights(self):
        return tuple(getattr(self, name) for name in FEATURE_NAMES)

    def multiplier(self, onset, stressed):
        m = 1.0
        if onset:
            m *= self.onset_multiplier
        if stressed:
            m *= self.stress_multiplier
        return m

    def with_(self, **changes):
        return replace(self, **changes)

    def to_text(self):
        return "".join(f"{k}={v:g}\n" for k, v in asdict(self).items())


DEFAULT_WEIGHTS = WeightProfile()


def load_weights(text):
    """Parse ``key=value`` lines; missing keys keep their defaults."""
    known = {f.name for f in fields(WeightProfile)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected key=value, got {line!r}", lineno)
        if key not in known:
            raise ParseError(f"unknown weight key {key!r}", lineno)
        if key in values:
            raise ParseError(f"weight key {key!r} given twice", lineno)
        try:
            values[key] = float(value)
        except ValueError:
            raise ParseError(f"{key}: not a number: {value.strip()!r}", lineno) from None
    try:
        return WeightProfile(**values)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_weights(path):
    with open(path, encoding="utf-8") as fh:
        return load_weights(fh.read())


def _check_same_inventory(a, b):
    if a.inventory != b.inventory:
        raise MixedInventoryError(
            f"phonemes from different inventories ({a.inventory!r} vs {b.inventory!r})"
        )


def bundle_distance(fa, fb, w=DEFAULT_WEIGHTS):
    total = 0.0
    for weight, x, y in zip(w.feature_weights, fa.values(), fb.values()):
        if x != y:
            total += weight
    return total


def phoneme_distance(a, b, w=DEFAULT_WEIGHTS):
    _check_same_inventory(a, b)
    return bundle_distance(a.features, b.features, w)


@lru_cache(maxsize=64)
def distance_matrix(inventory, w=DEFAULT_WEIGHTS):
    """Pairwise phoneme distances in inventory order (read-only array)."""
    phonemes = list(inventory)
    n = len(phonemes)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = bundle_distance(phonemes[i].features, phonemes[j].features, w)
    out.setflags(write=False)
    return out


def check_sequences(a, b):
    if a.inventory != b.inventory:
        raise MixedInventoryError(
            f"sequences from different inventories ({a.inventory.name!r} vs {b.inventory.name!r})"
        )


def template_distance(a, b, w=DEFAULT_WEIGHTS, normalize=False):
    """Positionwise distance between two sequences of identical length.

    A position is scaled by ``onset_multiplier`` when either word marks it as
    an onset and by ``stress_multiplier`` when either marks it stressed.
    """
    check_sequences(a, b)
    if len(a) != len(b):
        raise LengthMismatchError(
            f"template comparison needs equal lengths ({len(a)} vs {len(b)}); "
            "use alignment.word_distance for unequal lengths"
        )
    total = 0.0
    for pa, pb, oa, ob, sa, sb in zip(a.phonemes, b.phonemes, a.onset, b.onset, a.stressed, b.stressed):
        total += w.multiplier(oa or ob, sa or sb) * bundle_distance(pa.features, pb.features, w)
    if normalize and len(a):
        total /= len(a)
    return total
