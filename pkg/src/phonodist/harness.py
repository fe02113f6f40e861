"""Evaluate the three representation schemes against a fixed list of desiderata.

Every verdict is computed from the scheme's behaviour on the supplied
lexicon: nothing about a scheme is asserted without running it.  Efficiency
is reported (operation counts, optionally wall time) rather than judged, and
speaker-independence cannot be exercised without acoustic input.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources

from . import alignment, autoseg, soundex
from .errors import DataError, ParseError, PhonoError, UnknownNameError
from .features import DEFAULT_WEIGHTS, phoneme_distance, template_distance
from .inventory import default_inventory, parse_sequence

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not-applicable"

DESIDERATA = (
    "contrast_accuracy",
    "reversibility",
    "efficiency",
    "speaker_independence",
    "modularity",
    "decomposability",
    "distance_metric",
)

SCHEMES = ("soundex", "feature_alignment", "autoseg_fsa")


@dataclass(frozen=True)
class Verdict:
    verdict: str
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {"verdict": self.verdict, "evidence": self.evidence}


@dataclass
class DesiderataReport:
    scheme: str
    verdicts: dict
    notes: dict = field(default_factory=dict)
    error: str | None = None

    def __post_init__(self):
        missing = [d for d in DESIDERATA if d not in self.verdicts]
        extra = [d for d in self.verdicts if d not in DESIDERATA]
        if missing or extra:
            raise ValueError(f"{self.scheme}: missing {missing}, unexpected {extra}")

    def to_dict(self):
        out = {
            "scheme": self.scheme,
            "verdicts": {d: self.verdicts[d].to_dict() for d in DESIDERATA},
            "notes": self.notes,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    trials: int = 10_000
    weights: object = DEFAULT_WEIGHTS
    gold_pairs: tuple | None = None
    scales: tuple = (2, 3, 4, 5)
    profile_states: int = 8
    budget: int = autoseg.DEFAULT_BUDGET
    timings: bool = False


# -- metric axioms -------------------------------------------------------------


@dataclass
class AxiomSummary:
    nonnegativity: int = 0
    identity: int = 0
    symmetry: int = 0
    triangle: int | None = 0
    pairs_checked: int = 0
    triples_checked: int = 0
    seed: int = 0

    @property
    def total(self):
        return self.nonnegativity + self.identity + self.symmetry + (self.triangle or 0)

    def to_dict(self):
        return {
            "nonnegativity": self.nonnegativity,
            "identity": self.identity,
            "symmetry": self.symmetry,
            "triangle": self.triangle,
            "triangle_skipped": self.triangle is None,
            "pairs_checked": self.pairs_checked,
            "triples_checked": self.triples_checked,
            "seed": self.seed,
        }


def check_metric_axioms(distance, sample, trials, seed=0, same=None, tol=1e-9):
    """Count metric-axiom violations of ``distance`` over seeded random triples.

    ``same(x, y)`` decides indiscernibility for the identity axiom (default
    ``==``).  With fewer than three items the triangle check is skipped and
    every ordered pair is checked instead of sampling.
    """
    sample = list(sample)
    same = same or (lambda x, y: x == y)
    memo = {}

    def d(i, j):
        key = (i, j)
        if key not in memo:
            memo[key] = float(distance(sample[i], sample[j]))
        return memo[key]

    out = AxiomSummary(seed=seed)
    checked_pairs = set()

    def check_pair(i, j):
        if (i, j) in checked_pairs:
            return
        checked_pairs.add((i, j))
        dij = d(i, j)
        if dij < -tol:
            out.nonnegativity += 1
        if (abs(dij) <= tol) != bool(same(sample[i], sample[j])):
            out.identity += 1
        if abs(dij - d(j, i)) > tol:
            out.symmetry += 1

    n = len(sample)
    if n < 3:
        out.triangle = None
        for i in range(n):
            for j in range(n):
                check_pair(i, j)
    else:
        rng = random.Random(seed)
        for _ in range(trials):
            i, j, k = (rng.randrange(n) for _ in range(3))
            for p, q in ((i, j), (j, k), (i, k), (i, i)):
                check_pair(p, q)
            if d(i, k) > d(i, j) + d(j, k) + tol:
                out.triangle += 1
            out.triples_checked += 1
    out.pairs_checked = len(checked_pairs)
    return out


def same_bundles(a, b):
    return len(a) == len(b) and all(
        x.features == y.features for x, y in zip(a.phonemes, b.phonemes)
    )


# -- SOUNDEX discrimination ------------------------------------------------------


@dataclass
class Confusion:
    true_positive: int = 0
    false_positive: int = 0
    true_negative: int = 0
    false_negative: int = 0
    details: list = field(default_factory=list)

    def to_dict(self):
        return {
            "true_positive": self.true_positive,
            "false_positive": self.false_positive,
            "true_negative": self.true_negative,
            "false_negative": self.false_negative,
            "pairs": self.details,
        }


def soundex_discrimination(lexicon, gold_pairs, table=soundex.RUSSELL):
    """Confusion counts where "positive" means both names share a code."""
    names = set(lexicon)
    out = Confusion()
    for a, b, label in gold_pairs:
        for name in (a, b):
            if name not in names:
                raise UnknownNameError(f"gold pair name {name!r} is not in the lexicon")
        if label not in ("same", "different"):
            raise DataError(f"gold label must be same or different, got {label!r}")
        ca, cb = soundex.encode(a, table), soundex.encode(b, table)
        positive = ca == cb
        if positive and label == "same":
            kind = "true_positive"
        elif positive:
            kind = "false_positive"
        elif label == "same":
            kind = "false_negative"
        else:
            kind = "true_negative"
        setattr(out, kind, getattr(out, kind) + 1)
        out.details.append({"a": a, "b": b, "codes": [str(ca), str(cb)], "gold": label, "outcome": kind})
    return out


def load_gold_pairs(text):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in raw.split("\t")]
        if len(cells) != 3 or cells[2] not in ("same", "different"):
            raise ParseError("expected name1<TAB>name2<TAB>same|different", lineno)
        pairs.append(tuple(cells))
    return pairs


def read_gold_pairs(path):
    with open(path, encoding="utf-8") as fh:
        return load_gold_pairs(fh.read())


def _data_text(name):
    return resources.files("phonodist").joinpath("data", name).read_text(encoding="utf-8")


def default_gold_pairs():
    return load_gold_pairs(_data_text("gold_pairs.tsv"))


def toy_lexicon():
    return alignment.load_lexicon(_data_text("toy_lexicon.tsv"))


# -- per-scheme evaluation -------------------------------------------------------


class _CountingTable:
    def __init__(self, table):
        self.table = table
        self.lookups = 0

    def __getitem__(self, letter):
        self.lookups += 1
        return self.table[letter]


def _growth(ops):
    return ops[-1] / ops[0] if ops and ops[0] else None


def _efficiency(size_parameter, scales, ops, times, config, extra=None):
    evidence = {
        "size_parameter": size_parameter,
        "scales": list(scales),
        "operations": ops,
        "growth": _growth(ops),
    }
    if extra:
        evidence.update(extra)
    if config.timings:
        evidence["wall_time_s"] = times
    return Verdict(NOT_APPLICABLE, evidence)


def _speaker_independence():
    return Verdict(NOT_APPLICABLE, {"reason": "not testable in this artifact: needs acoustic input"})


def _comparison_levels(values):
    return len(set(values))


def evaluate_soundex(lexicon, config):
    names = [e.word for e in lexicon]
    gold = config.gold_pairs if config.gold_pairs is not None else default_gold_pairs()
    groups = soundex.collisions(names)
    shared = {str(c): sorted(v) for c, v in groups.items() if len(v) > 1}
    confusion = soundex_discrimination(names, gold)
    v = {}
    v["contrast_accuracy"] = Verdict(
        PASS if confusion.false_positive == 0 and confusion.false_negative == 0 else FAIL,
        {
            "confusion": confusion.to_dict(),
            "classes": len(groups),
            "names": len(names),
            "largest_class": max(len(m) for m in groups.values()),
            "code_space_size": soundex.code_space_size(),
        },
    )
    v["reversibility"] = Verdict(
        FAIL if shared else PASS,
        {"invertible": not shared, "shared_classes": shared},
    )
    ops, times = [], []
    for n in config.scales:
        name = ("Krumplestater" * n)[:n]
        counter = _CountingTable(soundex.RUSSELL)
        t0 = time.perf_counter()
        soundex.encode(name, counter)
        times.append(time.perf_counter() - t0)
        ops.append(counter.lookups)
    v["efficiency"] = _efficiency("letters in the name", config.scales, ops, times, config)
    v["speaker_independence"] = _speaker_independence()
    alt = soundex.SoundexTable(
        {"1": "BPFV", "2": "CSGJKQXZ", "3": "DT", "4": "LR", "5": "MN"},
        ignored="AEIOUYWH",
        name="probe",
    )
    v["modularity"] = Verdict(
        PASS if soundex.is_well_formed(soundex.encode(names[0], alt)) else FAIL,
        {"injected_table": alt.name, "component": "letter coding table"},
    )
    marked = [(n, n[:1] + "'" + n[1:]) for n in names]
    stress_blind = all(soundex.encode(a) == soundex.encode(b) for a, b in marked)
    v["decomposability"] = Verdict(
        FAIL if stress_blind else PASS,
        {"stress_marks_change_code": not stress_blind},
    )
    codes = [soundex.encode(n) for n in names]
    outcomes = [a == b for a in codes for b in codes]
    levels = _comparison_levels(outcomes)
    v["distance_metric"] = Verdict(
        FAIL if levels <= 2 else PASS,
        {
            "comparison_outcomes": levels,
            "graded": levels > 2,
            "reason": "codes are class labels; the only comparison is equality",
        },
    )
    return DesiderataReport("soundex", v, {"psycholinguistic_relation": "documentation only"})


def salience_tension(w=DEFAULT_WEIGHTS, inv=None):
    """Compare the place and voicing contrasts of /b/ under the given weights."""
    inv = default_inventory() if inv is None else inv
    place = phoneme_distance(inv["B"], inv["G"], w)
    voicing = phoneme_distance(inv["B"], inv["P"], w)
    return {
        "d(B,G)": place,
        "d(B,P)": voicing,
        "place_weight": w.place,
        "voicing_weight": w.voicing,
        "place_outranks_voicing": place > voicing,
        "flag": (
            "weights rank a place contrast above a voicing contrast; perceptual "
            "confusion data rank voicing as the more salient cue"
            if place > voicing
            else "voicing outranks place, consistent with perceptual confusion data"
        ),
    }


def evaluate_feature_alignment(lexicon, config):
    w = config.weights
    seqs = [e.pron for e in lexicon]
    inv = seqs[0].inventory
    v = {}
    collapsed = []
    distinct = 0
    matrix = alignment.pairwise_distances(seqs, seqs, w)
    for i in range(len(seqs)):
        for j in range(i + 1, len(seqs)):
            if seqs[i].symbols != seqs[j].symbols:
                distinct += 1
                if matrix[i, j] == 0:
                    collapsed.append([lexicon[i].word, lexicon[j].word])
    bundle_clashes = []
    phonemes = list(inv)
    for i, p in enumerate(phonemes):
        for q in phonemes[i + 1:]:
            if p.features == q.features:
                bundle_clashes.append([p.symbol, q.symbol])
    v["contrast_accuracy"] = Verdict(
        PASS if not collapsed else FAIL,
        {
            "distinct_pairs": distinct,
            "collapsed_pairs": collapsed,
            "inventory_bundle_clashes": bundle_clashes,
        },
    )
    round_trip = all(parse_sequence(s.format(), inv) == s for s in seqs)
    v["reversibility"] = Verdict(PASS if round_trip else FAIL, {"notation_round_trip": round_trip})
    ops, times = [], []
    for n in config.scales:
        a = parse_sequence(" ".join((seqs[0].symbols * n)[:n]), inv)
        b = parse_sequence(" ".join((seqs[-1].symbols * n)[:n]), inv)
        t0 = time.perf_counter()
        table = alignment.cost_table(a, b, w)
        times.append(time.perf_counter() - t0)
        ops.append(int(table.size))
    v["efficiency"] = _efficiency("phonemes per word (DP cells)", config.scales, ops, times, config)
    v["speaker_independence"] = _speaker_independence()
    sub_inv = inv.subset(["B", "P", "T", "D", "EH", "AH"], name="probe")
    probe = alignment.distance(
        parse_sequence("B EH T", sub_inv), parse_sequence("P AH D", sub_inv), w.with_(indel_cost=3)
    )
    v["modularity"] = Verdict(
        PASS if probe >= 0 else FAIL,
        {"swapped_inventory": sub_inv.name, "swapped_weights": {"indel_cost": 3.0}, "probe_distance": probe},
    )
    x, y = parse_sequence("B 'EH T", inv), parse_sequence("B 'AE T", inv)
    u, z = parse_sequence("B EH T", inv), parse_sequence("B AE T", inv)
    boosted = w.with_(stress_multiplier=w.stress_multiplier * 2)
    stressed_changes = alignment.distance(x, y, boosted) != alignment.distance(x, y, w)
    unstressed_same = alignment.distance(u, z, boosted) == alignment.distance(u, z, w)
    v["decomposability"] = Verdict(
        PASS if stressed_changes and unstressed_same else FAIL,
        {"stress_reweighting_isolated": stressed_changes and unstressed_same},
    )
    axioms = check_metric_axioms(
        lambda a, b: alignment.distance(a, b, w), seqs, config.trials, config.seed, same=same_bundles
    )
    graded = len({float(d) for d in matrix.ravel()})
    v["distance_metric"] = Verdict(
        PASS if axioms.total == 0 and graded > 2 else FAIL,
        {"axiom_violations": axioms.to_dict(), "comparison_outcomes": graded, "graded": graded > 2},
    )
    notes = {
        "salience_tension": salience_tension(w, inv),
        "psycholinguistic_relation": "documentation only",
    }
    equal = [(s, t) for s in seqs[:10] for t in seqs[:10] if len(s) == len(t)]
    notes["template_agrees_on_equal_lengths"] = all(
        alignment.distance(s, t, w) <= template_distance(s, t, w) for s, t in equal
    )
    return DesiderataReport("feature_alignment", v, notes)


def autoseg_word(seq):
    """Skeletal (C/V) and segmental chains for a pronunciation, pinned slot by slot."""
    inv = seq.inventory
    cv = ["V" if inv[s].syllabic else "C" for s in seq.symbols]
    pins = (autoseg.Pinning("skeletal", "segmental", frozenset((i, i) for i in range(len(cv) + 1))),)
    return autoseg.word_from_sequences(
        {"skeletal": cv, "segmental": list(seq.symbols)},
        pins,
        {"skeletal": ("C", "V"), "segmental": inv.symbols},
    )


def _accepted_strings(aut, max_len):
    found = []
    frontier = [((), aut.start)]
    for _ in range(max_len + 1):
        nxt = []
        for string, state in frontier:
            if state in aut.accepting:
                found.append(string)
            for sym, targets in aut.outgoing(state):
                nxt.extend((string + (sym,), t) for t in targets)
        frontier = nxt
    return sorted(set(found))


def evaluate_autoseg(lexicon, config):
    seqs = [e.pron for e in lexicon]
    words = [autoseg_word(s) for s in seqs]
    v = {}
    mismatches = []
    for i in range(len(words)):
        for j in range(i, len(words)):
            expect = seqs[i].symbols == seqs[j].symbols
            if autoseg.compatible(words[i], words[j], budget=config.budget) != expect:
                mismatches.append([lexicon[i].word, lexicon[j].word])
    v["contrast_accuracy"] = Verdict(
        PASS if not mismatches else FAIL,
        {"pairs_checked": len(words) * (len(words) + 1) // 2, "mismatches": mismatches},
    )
    recovered = all(
        _accepted_strings(w.tiers["segmental"], len(s) + 1) == [s.symbols] for w, s in zip(words, seqs)
    )
    v["reversibility"] = Verdict(PASS if recovered else FAIL, {"segmental_tier_recovers_word": recovered})
    rows = autoseg.intersection_cost_profile(
        config.scales, config.profile_states, seed=config.seed, budget=config.budget
    )
    ops = [r.product_states for r in rows]
    v["efficiency"] = _efficiency(
        "tiers intersected",
        config.scales,
        ops,
        [r.wall_time for r in rows],
        config,
        {
            "states_per_tier": config.profile_states,
            "bound": [config.profile_states**k for k in config.scales],
        },
    )
    v["speaker_independence"] = _speaker_independence()
    pair = next(
        (
            (x, y)
            for x, y in zip(seqs, seqs[1:])
            if x.symbols != y.symbols
            and [x.inventory[s].syllabic for s in x.symbols] == [y.inventory[s].syllabic for s in y.symbols]
        ),
        None,
    )
    if pair is None:
        reason = {"reason": "no pair of distinct words sharing a skeleton in the lexicon"}
        v["modularity"] = Verdict(NOT_APPLICABLE, reason)
        v["decomposability"] = Verdict(NOT_APPLICABLE, reason)
    else:
        wx, wy = autoseg_word(pair[0]), autoseg_word(pair[1])
        # skeleton of one word reassembled with the melody of the other
        hybrid = autoseg.AutosegWord(
            {"skeletal": wx.tiers["skeletal"], "segmental": wy.tiers["segmental"]}, wx.pinnings
        )
        swapped = autoseg.compatible(hybrid, wy)
        v["modularity"] = Verdict(
            PASS if swapped else FAIL,
            {"pair": [pair[0].format(), pair[1].format()], "reassembled_word_compatible": swapped},
        )
        skel_only = autoseg.compatible(
            autoseg.AutosegWord({"skeletal": wx.tiers["skeletal"]}),
            autoseg.AutosegWord({"skeletal": wy.tiers["skeletal"]}),
        )
        full = autoseg.compatible(wx, wy)
        v["decomposability"] = Verdict(
            PASS if skel_only and not full else FAIL,
            {
                "pair": [pair[0].format(), pair[1].format()],
                "skeletal_tier_compatible": skel_only,
                "all_tiers_compatible": full,
            },
        )
    outcomes = {autoseg.compatible(words[0], w) for w in words}
    v["distance_metric"] = Verdict(
        FAIL,
        {
            "comparison_outcomes": len(outcomes),
            "graded": False,
            "reason": "comparison is compatibility (non-emptiness), a yes/no answer",
        },
    ) if len(outcomes) <= 2 else Verdict(PASS, {"comparison_outcomes": len(outcomes), "graded": True})
    return DesiderataReport("autoseg_fsa", v, {"psycholinguistic_relation": "documentation only"})


_EVALUATORS = {
    "soundex": evaluate_soundex,
    "feature_alignment": evaluate_feature_alignment,
    "autoseg_fsa": evaluate_autoseg,
}


def compare_schemes(lexicon, config=None):
    """One :class:`DesiderataReport` per scheme; a failing scheme does not stop the others."""
    config = config or HarnessConfig()
    lexicon = list(lexicon)
    if not lexicon:
        raise DataError("lexicon is empty")
    reports = []
    for name in SCHEMES:
        try:
            reports.append(_EVALUATORS[name](lexicon, config))
        except PhonoError as exc:
            verdicts = {d: Verdict(NOT_APPLICABLE, {"error": str(exc)}) for d in DESIDERATA}
            reports.append(DesiderataReport(name, verdicts, error=f"{type(exc).__name__}: {exc}"))
    return reports


def triage(reports):
    """Summary of cross-scheme comparisons used in the final report."""
    by_name = {r.scheme: r for r in reports}
    growth = {
        r.scheme: r.verdicts["efficiency"].evidence.get("growth")
        for r in reports
        if r.error is None
    }
    known = {k: g for k, g in growth.items() if g is not None}
    return {
        "cost_growth": growth,
        "largest_cost_growth": max(known, key=known.get) if known else None,
        "metric_schemes": sorted(
            r.scheme for r in reports if r.verdicts["distance_metric"].verdict == PASS
        ),
        "invertible_schemes": sorted(
            r.scheme for r in reports if r.verdicts["reversibility"].verdict == PASS
        ),
        "soundex_invertible": by_name.get("soundex") is not None
        and by_name["soundex"].verdicts["reversibility"].verdict == PASS,
    }


def report_dict(reports, config):
    return {
        "seed": config.seed,
        "trials": config.trials,
        "schemes": [r.to_dict() for r in reports],
        "triage": triage(reports),
    }


def report_json(reports, config):
    return json.dumps(report_dict(reports, config), indent=2, sort_keys=True) + "\n"


def report_table(reports, config):
    head = ["desideratum"] + [r.scheme for r in reports]
    rows = [[d] + [r.verdicts[d].verdict for r in reports] for d in DESIDERATA]
    widths = [max(len(str(row[c])) for row in [head] + rows) for c in range(len(head))]
    lines = ["  ".join(str(x).ljust(wd) for x, wd in zip(row, widths)).rstrip() for row in [head] + rows]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    t = triage(reports)
    lines.append("")
    lines.append(f"seed {config.seed}, {config.trials} axiom trials")
    lines.append(
        "cost growth (largest/smallest size): "
        + ", ".join(f"{k} x{g:g}" for k, g in t["cost_growth"].items() if g is not None)
    )
    lines.append(f"largest cost growth: {t['largest_cost_growth']}")
    for r in reports:
        tension = r.notes.get("salience_tension")
        if tension:
            lines.append(
                f"salience: d(B,G)={tension['d(B,G)']:g} vs d(B,P)={tension['d(B,P)']:g}: {tension['flag']}"
            )
        if r.error:
            lines.append(f"{r.scheme}: error: {r.error}")
    return "\n".join(lines) + "\n"
