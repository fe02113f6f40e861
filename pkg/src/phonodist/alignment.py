"""Weighted edit-distance alignment of phoneme sequences of any length.

Substituting ``a[i]`` by ``b[j]`` costs the feature distance of the pair,
scaled by the onset/stress multiplier when either position carries the mark.
Inserting or deleting a segment costs ``indel_cost`` scaled by that segment's
own multiplier.  The dynamic programme runs in the compiled kernel when it is
available (see :mod:`phonodist.kernels`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DataError, ParseError
from .features import DEFAULT_WEIGHTS, check_sequences, distance_matrix
from .inventory import default_inventory, format_sequence, parse_sequence

MATCH, SUBST, INSERT, DELETE = "MATCH", "SUBST", "INSERT", "DELETE"
GAP = "-"


@dataclass(frozen=True)
class Step:
    op: str
    i: int | None
    j: int | None
    cost: float

    def to_dict(self):
        return {"op": self.op, "i": self.i, "j": self.j, "cost": self.cost}


@dataclass(frozen=True)
class Alignment:
    a: tuple
    b: tuple
    steps: tuple
    total_cost: float

    def pairs(self):
        """Aligned symbol pairs, with ``-`` standing for a gap."""
        out = []
        for step in self.steps:
            left = self.a[step.i] if step.i is not None else GAP
            right = self.b[step.j] if step.j is not None else GAP
            out.append((left, right))
        return out

    def render(self):
        pairs = self.pairs()
        widths = [max(len(x), len(y)) for x, y in pairs]
        top = "  ".join(x.ljust(w) for (x, _), w in zip(pairs, widths))
        bottom = "  ".join(y.ljust(w) for (_, y), w in zip(pairs, widths))
        return top.rstrip() + "\n" + bottom.rstrip()

    def to_dict(self):
        return {
            "a": list(self.a),
            "b": list(self.b),
            "total_cost": self.total_cost,
            "steps": [s.to_dict() for s in self.steps],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        steps = tuple(Step(s["op"], s["i"], s["j"], float(s["cost"])) for s in data["steps"])
        return cls(tuple(data["a"]), tuple(data["b"]), steps, float(data["total_cost"]))


def _flags(seq):
    return np.fromiter(
        (int(o) | (int(s) << 1) for o, s in zip(seq.onset, seq.stressed)),
        dtype=np.uint8,
        count=len(seq),
    )


def _indices(seq):
    inv = seq.inventory
    return np.fromiter((inv.index(s) for s in seq.symbols), dtype=np.intc, count=len(seq))


def _mult_table(w):
    return np.array([w.multiplier(f & 1, f & 2) for f in range(4)], dtype=np.float64)


def _pack(seqs):
    offsets = np.zeros(len(seqs) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(s) for s in seqs])
    if seqs:
        idx = np.concatenate([_indices(s) for s in seqs]).astype(np.intc)
        flags = np.concatenate([_flags(s) for s in seqs]).astype(np.uint8)
    else:
        idx, flags = np.zeros(0, np.intc), np.zeros(0, np.uint8)
    return np.ascontiguousarray(idx), np.ascontiguousarray(flags), offsets


def cost_table(a, b, w=DEFAULT_WEIGHTS):
    check_sequences(a, b)
    sub = np.ascontiguousarray(distance_matrix(a.inventory, w))
    return kernels.cost_table(
        _indices(a), _flags(a), _indices(b), _flags(b), sub, w.indel_cost, _mult_table(w)
    )


def _close(x, y):
    return abs(x - y) <= 1e-9 * max(1.0, abs(x))


def _traceback(a, b, table, w):
    sub = distance_matrix(a.inventory, w)
    ia, ib = _indices(a), _indices(b)
    fa, fb = _flags(a), _flags(b)
    mult = _mult_table(w)
    steps = []
    i, j = len(a), len(b)
    while i or j:
        here = table[i, j]
        if i and j:
            c = sub[ia[i - 1], ib[j - 1]] * mult[fa[i - 1] | fb[j - 1]]
            if _close(here, table[i - 1, j - 1] + c):
                same = a.phonemes[i - 1].features == b.phonemes[j - 1].features
                steps.append(Step(MATCH if same else SUBST, i - 1, j - 1, float(c)))
                i, j = i - 1, j - 1
                continue
        if i:
            c = w.indel_cost * mult[fa[i - 1]]
            if _close(here, table[i - 1, j] + c):
                steps.append(Step(DELETE, i - 1, None, float(c)))
                i -= 1
                continue
        c = w.indel_cost * mult[fb[j - 1]]
        steps.append(Step(INSERT, None, j - 1, float(c)))
        j -= 1
    steps.reverse()
    return steps


def _normalizer(a, b):
    return max(len(a), len(b)) or 1


def word_distance(a, b, w=DEFAULT_WEIGHTS, normalize=False):
    """Minimum alignment cost and one optimal :class:`Alignment`.

    Ties between equally cheap alignments are broken during traceback in the
    order MATCH/SUBST, DELETE, INSERT, so the result is deterministic.
    With ``normalize`` the cost (not the step costs) is divided by the longer
    length.
    """
    table = cost_table(a, b, w)
    cost = float(table[-1, -1])
    alignment = Alignment(a.symbols, b.symbols, tuple(_traceback(a, b, table, w)), cost)
    if normalize:
        cost /= _normalizer(a, b)
    return cost, alignment


def distance(a, b, w=DEFAULT_WEIGHTS):
    return float(cost_table(a, b, w)[-1, -1])


def pairwise_distances(seqs_a, seqs_b, w=DEFAULT_WEIGHTS):
    """Matrix of word distances between every sequence of ``seqs_a`` and ``seqs_b``."""
    seqs_a, seqs_b = list(seqs_a), list(seqs_b)
    if not seqs_a or not seqs_b:
        return np.zeros((len(seqs_a), len(seqs_b)))
    for s in seqs_a + seqs_b:
        check_sequences(seqs_a[0], s)
    inv = seqs_a[0].inventory
    sub = np.ascontiguousarray(distance_matrix(inv, w))
    return kernels.pairwise(*_pack(seqs_a), *_pack(seqs_b), sub, w.indel_cost, _mult_table(w))


def knn(query, lexicon, k, w=DEFAULT_WEIGHTS):
    """The ``k`` lexicon entries nearest to ``query``, ascending.

    Ties are broken by the entries' symbol tuples.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    lexicon = list(lexicon)
    if not lexicon:
        raise DataError("lexicon is empty")
    dists = pairwise_distances([query], lexicon, w)[0]
    order = sorted(range(len(lexicon)), key=lambda n: (dists[n], lexicon[n].symbols, n))
    return [(lexicon[n], float(dists[n])) for n in order[:k]]


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    pron: object

    def to_tsv(self):
        return f"{self.word}\t{format_sequence(self.pron)}"


def load_lexicon(text, inv=None):
    """Parse ``word<TAB>pronunciation`` lines (``#`` comments allowed)."""
    inv = default_inventory() if inv is None else inv
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        word, sep, pron = line.partition("\t")
        if not sep or not word.strip():
            raise ParseError("expected word<TAB>pronunciation", lineno)
        try:
            seq = parse_sequence(pron, inv)
        except DataError as exc:
            raise ParseError(f"{word.strip()}: {exc}", lineno) from None
        entries.append(LexiconEntry(word.strip(), seq))
    if not entries:
        raise ParseError("lexicon is empty")
    return entries


def read_lexicon(path, inv=None):
    with open(path, encoding="utf-8") as fh:
        return load_lexicon(fh.read(), inv)
