"""Acceptance criteria, one test per criterion.

Run with ``pytest -m acceptance -v`` (or ``python3 tests/test_acceptance.py``);
a PASS/FAIL line per criterion is printed at the end of the session.
"""

import random
import time

import numpy as np
import pytest

from phonodist import alignment, autoseg, harness, soundex
from phonodist.alignment import word_distance
from phonodist.features import DEFAULT_WEIGHTS, phoneme_distance
from phonodist.inventory import PhonemeSequence, default_inventory

from oracles import (
    all_nfas,
    all_words,
    brute_force,
    build,
    common_language_empty,
    matching_block,
    membership_mismatches,
    random_nfa,
)

pytestmark = pytest.mark.acceptance


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def test_1_soundex_examples():
    expected = {
        "Juola": "J400",
        "Krumplestater": "K651",
        "Kruempelstaedter": "K651",
        "Bonner": "B560",
        "Baymore": "B560",
        "Van Hoesen": "V525",
        "Vincenzo": "V525",
    }
    with Timer() as t:
        got = {name: str(soundex.encode(name)) for name in expected}
    assert got == expected
    assert t.seconds < 1


def test_2_code_space_size():
    with Timer() as t:
        n = soundex.code_space_size()
    assert t.seconds < 1
    assert n < 9000
    assert n == 8918, f"enumerated {n} well-formed codes"


def test_3_feature_weights():
    inv = default_inventory()
    with Timer() as t:
        d = lambda a, b: phoneme_distance(inv[a], inv[b])  # noqa: E731
        assert (d("D", "G"), d("Z", "S"), d("L", "R"), d("N", "D")) == (7, 4, 1, 1)
        assert all(d(s, s) == 0 for s in inv.symbols)
        ph = list(inv)
        m = np.array([[phoneme_distance(x, y) for y in ph] for x in ph])
        assert (m == m.T).all()
        # every triple (i, j, k): m[i, k] <= m[i, j] + m[j, k]
        assert (m[:, None, :] <= m[:, :, None] + m[None, :, :]).all()
    assert t.seconds < 10


def test_4_salience_tension():
    inv = default_inventory()
    assert phoneme_distance(inv["B"], inv["G"]) == 7
    assert phoneme_distance(inv["B"], inv["P"]) == 4
    cfg = harness.HarnessConfig(trials=100)
    report = harness.evaluate_feature_alignment(harness.toy_lexicon(), cfg)
    tension = report.notes["salience_tension"]
    assert tension["place_outranks_voicing"] and (tension["d(B,G)"], tension["d(B,P)"]) == (7, 4)
    assert "salience" in harness.report_table([report], cfg)


SUB_INVENTORY = ["B", "P", "T", "S", "EH", "AH"]


def test_5_alignment_oracle():
    inv = default_inventory()
    w = DEFAULT_WEIGHTS
    sub = np.array([[phoneme_distance(inv[a], inv[b], w) for b in SUB_INVENTORY] for a in SUB_INVENTORY])
    assert (sub == sub.astype(np.uint16)).all()

    def words(n):
        return [
            PhonemeSequence(tuple(SUB_INVENTORY[i] for i in row), (False,) * n, (False,) * n, inv)
            for row in all_words(len(SUB_INVENTORY), n)
        ]

    with Timer() as t:
        by_len = {n: words(n) for n in range(6)}
        # the matching enumeration agrees with literal path enumeration on small blocks
        for m in range(4):
            for n in range(4):
                block = matching_block(sub, int(w.indel_cost), m, n)
                rng = random.Random(m * 10 + n)
                for _ in range(40):
                    i, j = rng.randrange(len(by_len[m])), rng.randrange(len(by_len[n]))
                    assert block[i, j] == brute_force(by_len[m][i], by_len[n][j], w)
        mismatches = pairs = 0
        for m in range(6):
            for n in range(6):
                oracle = matching_block(sub, int(w.indel_cost), m, n)
                for s in range(0, len(by_len[m]), 1024):
                    dp = alignment.pairwise_distances(by_len[m][s : s + 1024], by_len[n], w)
                    mismatches += int((dp != oracle[s : s + 1024]).sum())
                    pairs += dp.size
                rng = random.Random(m * 6 + n)
                for _ in range(20):
                    i, j = rng.randrange(len(by_len[m])), rng.randrange(len(by_len[n]))
                    assert word_distance(by_len[m][i], by_len[n][j], w)[0] == oracle[i, j]
    assert pairs == 9331**2
    assert mismatches == 0
    assert t.seconds < 60


def test_6_metric_axioms():
    lexicon = harness.toy_lexicon()
    assert len(lexicon) == 50
    seqs = [e.pron for e in lexicon]
    with Timer() as t:
        s = harness.check_metric_axioms(alignment.distance, seqs, 10_000, seed=0, same=harness.same_bundles)
    assert s.triples_checked >= 10_000
    assert (s.nonnegativity, s.identity, s.symmetry, s.triangle) == (0, 0, 0, 0)
    assert t.seconds < 60


def test_7_fsa_correctness():
    with Timer() as t:
        # every automaton in the small classes, paired with every other
        for n_states, alphabet in ((2, "a"), (1, "abc")):
            nfas = list(all_nfas(n_states, alphabet))
            for sa in nfas:
                a = build("x", sa)
                for sb in nfas:
                    p = autoseg.intersect([a, build("y", sb)])
                    assert not membership_mismatches(sa, sb, p, 6)
                    assert autoseg.is_empty(p) == common_language_empty(sa, sb)
        # seeded pairs at the full size bounds
        rng = random.Random(0)
        for _ in range(1500):
            sa = random_nfa(rng, max_states=4, max_symbols=3)
            sb = random_nfa(rng, max_states=4, n_symbols=len(sa["alphabet"]))
            p = autoseg.intersect([build("x", sa), build("y", sb)])
            assert not membership_mismatches(sa, sb, p, 6)
            assert autoseg.is_empty(p) == common_language_empty(sa, sb)
    assert t.seconds < 60


def test_8_cost_profile():
    rows = autoseg.intersection_cost_profile([2, 3, 4, 5], 8)
    counts = [r.product_states for r in rows]
    print("product states for 2..5 tiers of 8 states:", counts)
    assert all(x < y for x, y in zip(counts, counts[1:]))
    assert all(c <= 8**r.tiers for c, r in zip(counts, rows))
    report = harness.evaluate_autoseg(harness.toy_lexicon(), harness.HarnessConfig(trials=10))
    evidence = report.verdicts["efficiency"].evidence
    assert evidence["operations"] == counts
    assert evidence["growth"] == counts[-1] / counts[0]


def test_9_desiderata_report():
    cfg = harness.HarnessConfig()
    reports = harness.compare_schemes(harness.toy_lexicon(), cfg)
    by_name = {r.scheme: r for r in reports}
    sx = by_name["soundex"]
    # verdicts come from the data: a shared code class exists, and code comparison has two outcomes
    assert sx.verdicts["reversibility"].verdict == harness.FAIL
    assert any(len(v) > 1 for v in sx.verdicts["reversibility"].evidence["shared_classes"].values())
    assert sx.verdicts["distance_metric"].verdict == harness.FAIL
    assert sx.verdicts["distance_metric"].evidence["comparison_outcomes"] == 2
    fa = by_name["feature_alignment"]
    assert fa.verdicts["distance_metric"].verdict == harness.PASS
    violations = fa.verdicts["distance_metric"].evidence["axiom_violations"]
    assert violations["triples_checked"] == 10_000
    assert sum(violations[k] for k in ("nonnegativity", "identity", "symmetry", "triangle")) == 0
    au = by_name["autoseg_fsa"]
    assert au.verdicts["contrast_accuracy"].verdict == harness.PASS
    t = harness.triage(reports)
    growth = t["cost_growth"]
    assert growth["autoseg_fsa"] == max(growth.values())
    assert t["largest_cost_growth"] == "autoseg_fsa"


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
