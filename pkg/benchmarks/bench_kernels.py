"""Compare the compiled and pure-Python alignment kernels.

    python3 benchmarks/bench_kernels.py [--words 200] [--repeat 3]

Times an all-pairs distance matrix over random words drawn from the toy
lexicon's phonemes and checks that both backends return identical numbers.
"""

import argparse
import random
import time

import numpy as np

from phonodist import alignment, kernels
from phonodist.features import DEFAULT_WEIGHTS, distance_matrix
from phonodist.harness import toy_lexicon
from phonodist.inventory import parse_sequence


def random_words(n, seed):
    rng = random.Random(seed)
    lex = [e.pron for e in toy_lexicon()]
    out = []
    for _ in range(n):
        a, b = rng.sample(lex, 2)
        cut = rng.randrange(1, len(a) + 1)
        out.append(parse_sequence(" ".join(a.symbols[:cut] + b.symbols[cut // 2 :]), a.inventory))
    return out


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    words = random_words(args.words, args.seed)
    packed = alignment._pack(words)
    sub = np.ascontiguousarray(distance_matrix(words[0].inventory, DEFAULT_WEIGHTS))
    mult = alignment._mult_table(DEFAULT_WEIGHTS)
    pairs = len(words) ** 2
    cells = sum((len(a) + 1) * (len(b) + 1) for a in words for b in words)
    print(f"{len(words)} words, {pairs} pairs, {cells} DP cells; default backend: {kernels.BACKEND}")
    results = {}
    for name in kernels.available_backends():
        backend = kernels.get_backend(name)
        secs, m = best_of(lambda: backend.pairwise(*packed, *packed, sub, DEFAULT_WEIGHTS.indel_cost, mult), args.repeat)
        results[name] = (secs, m)
        print(f"{name:7s} {secs:9.4f} s  {pairs / secs:12.0f} pairs/s")
    if len(results) == 2:
        (s_cy, m_cy), (s_py, m_py) = results["cython"], results["python"]
        print(f"speedup {s_py / s_cy:.1f}x, identical results: {np.array_equal(m_cy, m_py)}")


if __name__ == "__main__":
    main()
