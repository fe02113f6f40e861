"""Russell/SOUNDEX name coding.

A name maps to its initial letter followed by three digits.  Letters after
the initial are coded with a :class:`SoundexTable`; adjacent letters sharing
a digit count once (the initial letter takes part in this), ignored letters
break such runs, and short codes are padded with zeros.

>>> encode("Juola")
'J400'
>>> encode("Van Hoesen") == encode("Vincenzo")
True
"""

from __future__ import annotations

import itertools
import json
import re
import string

from .errors import EncodingError, ParseError

CODE_PATTERN = re.compile(r"[A-Z][0-6]{3}")


class SoundexCode(str):
    """A four-character code such as ``B560``; zero padding only as a suffix."""

    __slots__ = ()

    def __new__(cls, value):
        value = str(value)
        if not is_well_formed(value):
            raise EncodingError(f"malformed SOUNDEX code {value!r}")
        return super().__new__(cls, value)

    @property
    def initial(self):
        return self[0]

    @property
    def digits(self):
        return self[1:]


def is_well_formed(code):
    if not CODE_PATTERN.fullmatch(code):
        return False
    digits = code[1:]
    return "0" not in digits or set(digits[digits.index("0"):]) == {"0"}


class SoundexTable:
    """Letter to digit mapping; letters mapped to ``None`` are ignored.

    The table is injectable so alternative codings can be registered; only the
    Russell table ships.
    """

    def __init__(self, groups, ignored, name="custom"):
        mapping = {}
        for digit, letters in groups.items():
            if digit not in "123456" or len(str(digit)) != 1:
                raise ValueError(f"digit must be 1-6, got {digit!r}")
            for letter in letters:
                if letter in mapping:
                    raise ValueError(f"letter {letter} mapped twice")
                mapping[letter] = str(digit)
        for letter in ignored:
            if letter in mapping:
                raise ValueError(f"letter {letter} both coded and ignored")
            mapping[letter] = None
        missing = set(string.ascii_uppercase) - set(mapping)
        if missing:
            raise ValueError(f"table does not cover {''.join(sorted(missing))}")
        self.name = name
        self._mapping = mapping

    def __getitem__(self, letter):
        return self._mapping[letter]

    def items(self):
        return self._mapping.items()


RUSSELL = SoundexTable(
    {
        "1": "BPFV",
        "2": "CSGJKQXZ",
        "3": "DT",
        "4": "L",
        "5": "MN",
        "6": "R",
    },
    ignored="AEIOUYWH",
    name="russell",
)


def _letters(name):
    letters = []
    for ch in name:
        if not ch.isalpha():
            continue
        if ch not in string.ascii_letters:
            raise EncodingError(f"non-ASCII letter {ch!r} in {name!r}")
        letters.append(ch.upper())
    if not letters:
        raise EncodingError(f"no letters to encode in {name!r}")
    return letters


def encode(name, table=RUSSELL):
    letters = _letters(name)
    prev = table[letters[0]]
    digits = []
    for letter in letters[1:]:
        code = table[letter]
        if code is not None and code != prev:
            digits.append(code)
        prev = code
    return SoundexCode(letters[0] + "".join(digits[:3]).ljust(3, "0"))


def code_space_size():
    """Count well-formed codes by enumerating every letter/digit combination."""
    count = 0
    for initial in string.ascii_uppercase:
        for digits in itertools.product("0123456", repeat=3):
            if is_well_formed(initial + "".join(digits)):
                count += 1
    return count


def collisions(lexicon, table=RUSSELL):
    """Group names by code, largest classes first (ties by code)."""
    groups = {}
    for name in lexicon:
        try:
            code = encode(name, table)
        except EncodingError as exc:
            raise EncodingError(f"cannot encode {name!r}: {exc}") from None
        groups.setdefault(code, set()).add(name)
    ordered = sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    return dict(ordered)


def collision_records(groups):
    return [
        {"code": str(code), "size": len(names), "members": sorted(names)}
        for code, names in groups.items()
    ]


def collision_jsonl(groups):
    return "".join(json.dumps(rec) + "\n" for rec in collision_records(groups))


def load_names(text):
    names = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.append(line)
    if not names:
        raise ParseError("name list is empty")
    return names


def read_names(path):
    with open(path, encoding="utf-8") as fh:
        return load_names(fh.read())
