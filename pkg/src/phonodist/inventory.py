"""Phoneme inventories, feature bundles and phoneme-sequence notation.

Inventories are read from a tab-separated table, one phoneme per row::

    symbol  place  manner  height  voicing  syllabic  nasal  lateral  rounded  sibilant

``#`` starts a comment line, booleans are ``0``/``1`` and ``-`` means "none".
A General American English inventory ships in ``data/default_inventory.tsv``.

Sequences are written as space-separated symbols.  A ``'`` prefix marks a
stressed syllabic segment and a ``+`` prefix marks an onset consonant::

    >>> seq = parse_sequence("+B 'EH T")
    >>> seq.symbols
    ('B', 'EH', 'T')
    >>> seq.format()
    "+B 'EH T"
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import (
    DuplicateSymbolError,
    InvariantError,
    ParseError,
    UnknownSymbolError,
)

STRESS_MARK = "'"
ONSET_MARK = "+"


class Place(str, enum.Enum):
    BILABIAL = "bilabial"
    LABIODENTAL = "labiodental"
    DENTAL = "dental"
    ALVEOLAR = "alveolar"
    POSTALVEOLAR = "postalveolar"
    PALATAL = "palatal"
    VELAR = "velar"
    GLOTTAL = "glottal"
    NONE = "-"


class Manner(str, enum.Enum):
    STOP = "stop"
    FRICATIVE = "fricative"
    AFFRICATE = "affricate"
    APPROXIMANT = "approximant"
    VOWEL = "vowel"


class Height(str, enum.Enum):
    HIGH = "high"
    MID_HIGH = "mid-high"
    MID = "mid"
    MID_LOW = "mid-low"
    LOW = "low"
    NONE = "-"


@dataclass(frozen=True)
class FeatureBundle:
    place: Place
    manner: Manner
    height: Height
    voicing: bool
    syllabic: bool
    nasal: bool = False
    lateral: bool = False
    rounded: bool = False
    sibilant: bool = False

    def __post_init__(self):
        object.__setattr__(self, "place", Place(self.place))
        object.__setattr__(self, "manner", Manner(self.manner))
        object.__setattr__(self, "height", Height(self.height))
        for name in ("voicing", "syllabic", "nasal", "lateral", "rounded", "sibilant"):
            object.__setattr__(self, name, bool(getattr(self, name)))
        for problem in self.violations():
            raise InvariantError(problem)

    def violations(self):
        """List the bundle invariants this combination of values breaks."""
        out = []
        vowel = self.manner is Manner.VOWEL
        has_height = self.height is not Height.NONE
        if vowel != self.syllabic or vowel != has_height:
            out.append(
                "manner=vowel, syllabic=1 and height!=none must hold together "
                f"(manner={self.manner.value}, syllabic={int(self.syllabic)}, "
                f"height={self.height.value})"
            )
        if vowel and self.place is not Place.NONE:
            out.append(f"vowel with a place value ({self.place.value})")
        if not vowel and self.place is Place.NONE:
            out.append("consonant without a place value")
        if self.nasal and self.manner is not Manner.STOP:
            out.append(f"nasal segment must have manner=stop, not {self.manner.value}")
        return out

    def values(self):
        return tuple(getattr(self, name) for name in FEATURE_NAMES)


FEATURE_NAMES = (
    "place",
    "manner",
    "height",
    "voicing",
    "syllabic",
    "nasal",
    "lateral",
    "rounded",
    "sibilant",
)


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    features: FeatureBundle
    inventory: str = field(default="", compare=False)

    @property
    def syllabic(self):
        return self.features.syllabic


class Inventory:
    """An ordered, validated set of phonemes keyed by symbol.

    Two inventories compare equal when they hold the same phonemes in the same
    order; ``name`` only labels the phonemes for mixed-inventory checks.
    """

    def __init__(self, phonemes, name=None):
        phonemes = list(phonemes)
        if not phonemes:
            raise ParseError("empty inventory")
        by_symbol = {}
        for ph in phonemes:
            if ph.symbol in by_symbol:
                raise DuplicateSymbolError(f"duplicate symbol {ph.symbol!r}")
            by_symbol[ph.symbol] = ph
        if name is None:
            digest = hashlib.sha1(
                repr([(p.symbol, p.features.values()) for p in phonemes]).encode()
            ).hexdigest()
            name = "inv-" + digest[:10]
        self.name = name
        self._phonemes = tuple(
            Phoneme(p.symbol, p.features, name) for p in phonemes
        )
        self._by_symbol = {p.symbol: p for p in self._phonemes}
        self._index = {p.symbol: i for i, p in enumerate(self._phonemes)}
        self._key = tuple((p.symbol, p.features) for p in self._phonemes)
        self._hash = hash(self._key)

    def __len__(self):
        return len(self._phonemes)

    def __iter__(self):
        return iter(self._phonemes)

    def __contains__(self, symbol):
        return symbol in self._by_symbol

    def __getitem__(self, symbol):
        return self._by_symbol[symbol]

    def __eq__(self, other):
        if not isinstance(other, Inventory):
            return NotImplemented
        return self is other or self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Inventory({self.name!r}, {len(self)} phonemes)"

    @property
    def symbols(self):
        return tuple(p.symbol for p in self._phonemes)

    def index(self, symbol):
        return self._index[symbol]

    def subset(self, symbols, name=None):
        """A smaller inventory holding only ``symbols`` (in the given order)."""
        return Inventory([self[s] for s in symbols], name=name)

    def to_tsv(self):
        lines = ["# symbol\t" + "\t".join(FEATURE_NAMES)]
        for p in self._phonemes:
            cells = [p.symbol]
            for value in p.features.values():
                if isinstance(value, enum.Enum):
                    cells.append(value.value)
                else:
                    cells.append(str(int(value)))
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def _parse_bool(cell, lineno, column):
    if cell not in ("0", "1"):
        raise ParseError(f"{column} must be 0 or 1, got {cell!r}", lineno)
    return cell == "1"


def load_inventory(source=None, name=None):
    """Parse inventory TSV text; with no source, return the built-in default."""
    if source is None:
        return default_inventory()
    phonemes = []
    seen = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cells)}", lineno)
        symbol = cells[0].strip()
        if not symbol or any(c.isspace() for c in symbol) or symbol[0] in (STRESS_MARK, ONSET_MARK):
            raise ParseError(f"invalid symbol {symbol!r}", lineno)
        if symbol in seen:
            raise DuplicateSymbolError(f"duplicate symbol {symbol!r}", lineno)
        seen.add(symbol)
        place, manner, height = (c.strip() for c in cells[1:4])
        try:
            place, manner, height = Place(place), Manner(manner), Height(height)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        flags = [
            _parse_bool(c.strip(), lineno, col)
            for c, col in zip(cells[4:], FEATURE_NAMES[3:])
        ]
        try:
            bundle = FeatureBundle(place, manner, height, *flags)
        except InvariantError as exc:
            raise InvariantError(f"line {lineno}: {symbol}: {exc}") from None
        phonemes.append(Phoneme(symbol, bundle))
    if not phonemes:
        raise ParseError("empty inventory")
    return Inventory(phonemes, name=name)


def read_inventory(path):
    with open(path, encoding="utf-8") as fh:
        return load_inventory(fh.read())


@lru_cache(maxsize=None)
def default_inventory():
    text = resources.files("phonodist").joinpath("data/default_inventory.tsv").read_text(
        encoding="utf-8"
    )
    return load_inventory(text, name="default")


@dataclass(frozen=True)
class PhonemeSequence:
    """An immutable word pronunciation with optional stress and onset marks."""

    symbols: tuple
    stressed: tuple = None
    onset: tuple = None
    inventory: Inventory = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        inv = self.inventory if self.inventory is not None else default_inventory()
        object.__setattr__(self, "inventory", inv)
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        n = len(symbols)
        for attr in ("stressed", "onset"):
            flags = getattr(self, attr)
            flags = (False,) * n if flags is None else tuple(bool(f) for f in flags)
            if len(flags) != n:
                raise InvariantError(f"{attr} flags must match sequence length {n}")
            object.__setattr__(self, attr, flags)
        for pos, sym in enumerate(symbols, start=1):
            if sym not in inv:
                raise UnknownSymbolError(sym, pos)
            syllabic = inv[sym].syllabic
            if self.stressed[pos - 1] and not syllabic:
                raise InvariantError(f"stress mark on non-syllabic {sym!r} at position {pos}")
            if self.onset[pos - 1] and syllabic:
                raise InvariantError(f"onset mark on syllabic {sym!r} at position {pos}")

    def __len__(self):
        return len(self.symbols)

    @property
    def phonemes(self):
        inv = self.inventory
        return tuple(inv[s] for s in self.symbols)

    def format(self):
        return format_sequence(self)

    def __str__(self):
        return self.format()


def parse_sequence(text, inv=None):
    """Tokenize sequence notation against ``inv`` (default inventory if omitted).

    Positions in error messages are 1-based.
    """
    inv = default_inventory() if inv is None else inv
    symbols, stressed, onset = [], [], []
    for pos, token in enumerate(text.split(), start=1):
        stress = mark = False
        while token[:1] in (STRESS_MARK, ONSET_MARK):
            if token[0] == STRESS_MARK:
                stress = True
            else:
                mark = True
            token = token[1:]
        sym = token.upper()
        if sym not in inv:
            raise UnknownSymbolError(token, pos)
        if stress and not inv[sym].syllabic:
            raise ParseError(f"stress mark on non-syllabic {sym!r} at position {pos}")
        if mark and inv[sym].syllabic:
            raise ParseError(f"onset mark on syllabic {sym!r} at position {pos}")
        symbols.append(sym)
        stressed.append(stress)
        onset.append(mark)
    return PhonemeSequence(tuple(symbols), tuple(stressed), tuple(onset), inv)


def format_sequence(seq):
    parts = []
    for sym, stress, mark in zip(seq.symbols, seq.stressed, seq.onset):
        prefix = (STRESS_MARK if stress else "") + (ONSET_MARK if mark else "")
        parts.append(prefix + sym)
    return " ".join(parts)
