"""Independent reference implementations used by the tests.

Nothing here calls the code under test except for simple accessors; the
alignment oracles enumerate alignments directly and the automaton oracles
simulate raw transition tables.
"""

import itertools

import numpy as np

from phonodist.features import DEFAULT_WEIGHTS, phoneme_distance


# -- alignment ---------------------------------------------------------------

def mult(w, onset, stressed):
    m = 1.0
    if onset:
        m *= w.onset_multiplier
    if stressed:
        m *= w.stress_multiplier
    return m


def all_alignments(m, n):
    """Every monotone path of diagonal/delete/insert steps from (0, 0) to (m, n)."""
    if m == 0 and n == 0:
        yield ()
        return
    if m and n:
        for rest in all_alignments(m - 1, n - 1):
            yield rest + (("D", m - 1, n - 1),)
    if m:
        for rest in all_alignments(m - 1, n):
            yield rest + (("X", m - 1, None),)
    if n:
        for rest in all_alignments(m, n - 1):
            yield rest + (("I", None, n - 1),)


def path_cost(a, b, path, w):
    pa, pb = a.phonemes, b.phonemes
    total = 0.0
    for kind, i, j in path:
        if kind == "D":
            total += phoneme_distance(pa[i], pb[j], w) * mult(
                w, a.onset[i] or b.onset[j], a.stressed[i] or b.stressed[j]
            )
        elif kind == "X":
            total += w.indel_cost * mult(w, a.onset[i], a.stressed[i])
        else:
            total += w.indel_cost * mult(w, b.onset[j], b.stressed[j])
    return total


def brute_force(a, b, w=DEFAULT_WEIGHTS):
    return min(path_cost(a, b, p, w) for p in all_alignments(len(a), len(b)))


def all_words(n_symbols, length):
    return np.array(list(itertools.product(range(n_symbols), repeat=length)), dtype=np.intp).reshape(n_symbols**length, length)


def matching_block(sub, indel, m, n, chunk=32):
    """Minimum cost over every alignment for all index words of lengths m and n.

    Without position-dependent multipliers an alignment's cost depends only on
    its set of diagonal pairs (an increasing matching); every unmatched
    segment costs ``indel``.  The search enumerates all matchings once and
    evaluates each one for a whole block of word pairs at a time.  ``sub``
    must hold small non-negative integers.
    """
    ns = sub.shape[0]
    A, B = all_words(ns, m), all_words(ns, n)
    out = np.empty((len(A), len(B)), dtype=np.uint16)
    if m == 0 or n == 0:
        out[:] = indel * (m + n)
        return out
    sub = sub.astype(np.uint16)
    for s in range(0, len(A), chunk):
        a = A[s : s + chunk]
        cell = {(i, j): sub[a[:, i][:, None], B[:, j][None, :]] for i in range(m) for j in range(n)}
        best = np.full((len(a), len(B)), indel * (m + n), dtype=np.uint16)

        def extend(i0, j0, k, acc):
            for i in range(i0, m):
                for j in range(j0, n):
                    nxt = cell[(i, j)] if acc is None else acc + cell[(i, j)]
                    np.minimum(best, nxt + np.uint16(indel * (m + n - 2 * (k + 1))), out=best)
                    extend(i + 1, j + 1, k + 1, nxt)

        extend(0, 0, 0, None)
        out[s : s + chunk] = best
    return out


# -- automata ----------------------------------------------------------------

def random_nfa(rng, max_states=4, max_symbols=3, n_symbols=None):
    """A random NFA as a plain dict (states 0..n-1, start 0)."""
    n = rng.randint(1, max_states)
    k = n_symbols or rng.randint(1, max_symbols)
    alphabet = "abc"[:k]
    delta = {}
    for s in range(n):
        for x in alphabet:
            targets = {t for t in range(n) if rng.random() < 0.35}
            if targets:
                delta[(s, x)] = targets
    accepting = {s for s in range(n) if rng.random() < 0.4}
    return {"n": n, "alphabet": alphabet, "delta": delta, "accepting": accepting}


def all_nfas(n_states, alphabet):
    """Every NFA with ``n_states`` states over ``alphabet`` (start state 0)."""
    keys = [(s, x) for s in range(n_states) for x in alphabet]
    subsets = [frozenset(c) for r in range(n_states + 1) for c in itertools.combinations(range(n_states), r)]
    for targets in itertools.product(subsets, repeat=len(keys)):
        delta = {k: set(t) for k, t in zip(keys, targets) if t}
        for accepting in subsets:
            yield {"n": n_states, "alphabet": alphabet, "delta": delta, "accepting": set(accepting)}


def step(nfa, current, symbol):
    out = set()
    for s in current:
        out |= nfa["delta"].get((s, symbol), set())
    return frozenset(out)


def nfa_accepts(nfa, string):
    current = frozenset({0})
    for x in string:
        current = step(nfa, current, x)
    return bool(current & nfa["accepting"])


def strings(alphabet, max_len):
    for n in range(max_len + 1):
        yield from ("".join(p) for p in itertools.product(alphabet, repeat=n))


def membership_mismatches(nfa_a, nfa_b, product, max_len):
    """Strings up to ``max_len`` where the product disagrees with A and B.

    Walks the string tree depth first, carrying the subset of states of each
    automaton, so every prefix is simulated once.
    """
    alphabet = nfa_a["alphabet"]
    bad = []

    def walk(prefix, sa, sb, sp):
        want = bool(sa & nfa_a["accepting"]) and bool(sb & nfa_b["accepting"])
        got = bool(sp & product.accepting)
        if want != got:
            bad.append(prefix)
        if len(prefix) == max_len:
            return
        for x in alphabet:
            nxt = set()
            for s in sp:
                nxt |= product.targets(s, x)
            walk(prefix + x, step(nfa_a, sa, x), step(nfa_b, sb, x), frozenset(nxt))

    start = frozenset({product.start}) if product.state_tuples else frozenset()
    walk("", frozenset({0}), frozenset({0}), start)
    return bad


def common_language_empty(nfa_a, nfa_b):
    """Whether A and B share no string, by search over pairs of state subsets."""
    start = (frozenset({0}), frozenset({0}))
    seen = {start}
    todo = [start]
    while todo:
        sa, sb = todo.pop()
        if sa & nfa_a["accepting"] and sb & nfa_b["accepting"]:
            return False
        for x in nfa_a["alphabet"]:
            nxt = (step(nfa_a, sa, x), step(nfa_b, sb, x))
            if nxt[0] and nxt[1] and nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return True


def build(tier, nfa):
    from phonodist.autoseg import TierAutomaton

    return TierAutomaton(tier, nfa["alphabet"], nfa["n"], nfa["delta"], 0, nfa["accepting"])
