"""Autosegmental words as per-tier finite-state automata.

Each tier of a word is a (possibly nondeterministic) automaton without
epsilon moves.  Tiers are tied together by pinnings: a pinning between tiers
A and B pairs a state ``p`` of A with a state ``q`` of B, meaning that in any
joint configuration A sits in ``p`` exactly when B sits in ``q``.

:func:`intersect` builds the product of automata that read one shared
alphabet; configurations that break a pinning are removed before the search,
and only configurations reachable from the start survive.  :func:`compatible`
asks whether two words admit a common realisation: same-named tiers of the two
words read the same symbols in lockstep, while different tiers advance
independently (any non-empty subset of tiers moves at each step), so pinnings
are what synchronise them.  For single-tier words this is plain intersection.

Text format, one directive per line::

    tier skeletal alphabet C V
    state 0 start
    state 1
    state 2 accept
    trans 0 C 1
    trans 1 V 2
    pin skeletal:1 segmental:1
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    AlphabetMismatchError,
    DanglingPinningError,
    DataError,
    ParseError,
    ResourceLimitError,
    TierMismatchError,
)

DEFAULT_BUDGET = 10**6


class TierAutomaton:
    """A finite automaton over states ``0..n_states-1`` for one tier."""

    def __init__(self, tier, alphabet, n_states, transitions, start, accepting):
        alphabet = frozenset(alphabet)
        if not alphabet:
            raise DataError(f"tier {tier!r}: alphabet is empty")
        if n_states < 1:
            raise DataError(f"tier {tier!r}: needs at least one state")
        states = range(n_states)
        if start not in states:
            raise DataError(f"tier {tier!r}: start state {start} does not exist")
        accepting = frozenset(accepting)
        bad = sorted(s for s in accepting if s not in states)
        if bad:
            raise DataError(f"tier {tier!r}: accepting states {bad} do not exist")
        table = {}
        for (src, sym), targets in transitions.items():
            targets = frozenset([targets] if isinstance(targets, int) else targets)
            if src not in states or any(t not in states for t in targets):
                raise DataError(f"tier {tier!r}: transition {src} {sym} -> {sorted(targets)} leaves the state set")
            if sym not in alphabet:
                raise DataError(f"tier {tier!r}: symbol {sym!r} not in alphabet")
            if targets:
                table[(src, sym)] = table.get((src, sym), frozenset()) | targets
        self.tier = tier
        self.alphabet = alphabet
        self.n_states = n_states
        self.start = start
        self.accepting = accepting
        self._delta = table
        self._out = {}
        for (src, sym), targets in sorted(table.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
            self._out.setdefault(src, []).append((sym, tuple(sorted(targets))))

    @property
    def states(self):
        return range(self.n_states)

    @property
    def transitions(self):
        return dict(self._delta)

    def targets(self, state, symbol):
        return self._delta.get((state, symbol), frozenset())

    def outgoing(self, state):
        return self._out.get(state, ())

    def accepts(self, string):
        current = {self.start}
        for sym in string:
            current = set().union(*(self.targets(s, sym) for s in current)) if current else set()
            if not current:
                return False
        return bool(current & self.accepting)

    def renamed(self, tier):
        return TierAutomaton(tier, self.alphabet, self.n_states, self._delta, self.start, self.accepting)

    def __repr__(self):
        return (
            f"TierAutomaton({self.tier!r}, states={self.n_states}, "
            f"alphabet={sorted(map(str, self.alphabet))}, transitions={len(self._delta)})"
        )


class ProductAutomaton(TierAutomaton):
    """Result of :func:`intersect`; ``state_tuples[k]`` names product state ``k``."""

    def __init__(self, tier, alphabet, state_tuples, transitions, start, accepting):
        self.state_tuples = tuple(state_tuples)
        super().__init__(tier, alphabet, max(1, len(self.state_tuples)), transitions, start, accepting)

    @property
    def visited(self):
        return len(self.state_tuples)


@dataclass(frozen=True)
class Pinning:
    tier_a: str
    tier_b: str
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(p), int(q)) for p, q in self.pairs))

    def check(self, automata):
        """Raise unless both tiers exist in ``automata`` (a name->automaton map) with the pinned states."""
        for name, idx in ((self.tier_a, 0), (self.tier_b, 1)):
            if name not in automata:
                raise DanglingPinningError(f"pinning refers to unknown tier {name!r}")
            n = automata[name].n_states
            for pair in self.pairs:
                if not 0 <= pair[idx] < n:
                    raise DanglingPinningError(f"pinning refers to missing state {name}:{pair[idx]}")


@dataclass(frozen=True)
class AutosegWord:
    tiers: dict
    pinnings: tuple = ()

    def __post_init__(self):
        tiers = dict(self.tiers)
        for name, aut in tiers.items():
            if aut.tier != name:
                tiers[name] = aut.renamed(name)
        object.__setattr__(self, "tiers", tiers)
        object.__setattr__(self, "pinnings", tuple(self.pinnings))
        for pin in self.pinnings:
            pin.check(tiers)


def from_sequence(tier, symbols, alphabet=None):
    """A chain automaton accepting exactly ``symbols``.

    The alphabet defaults to the symbols used; pass a larger one when the
    automaton will be intersected with others.
    """
    symbols = list(symbols)
    if not symbols:
        raise DataError("cannot build a tier automaton from an empty sequence")
    alphabet = set(symbols) if alphabet is None else set(alphabet)
    transitions = {(i, sym): {i + 1} for i, sym in enumerate(symbols)}
    return TierAutomaton(tier, alphabet, len(symbols) + 1, transitions, 0, {len(symbols)})


def _resolve_pins(names, pinnings):
    """Turn pinnings into ``(component_a, state_a, component_b, state_b)`` constraints."""
    index = {}
    for k, name in enumerate(names):
        index.setdefault(name, []).append(k)
    constraints = []
    for pin in pinnings:
        ends = []
        for name in (pin.tier_a, pin.tier_b):
            hits = index.get(name, [])
            if not hits:
                raise DanglingPinningError(f"pinning refers to unknown tier {name!r}")
            if len(hits) > 1:
                raise DanglingPinningError(f"pinning tier {name!r} is ambiguous")
            ends.append(hits[0])
        for p, q in sorted(pin.pairs):
            constraints.append((ends[0], p, ends[1], q))
    return constraints


def _ok(state, constraints):
    for ca, p, cb, q in constraints:
        if (state[ca] == p) != (state[cb] == q):
            return False
    return True


def _tape_moves(components, group, state):
    """Joint successors of the components in ``group`` reading one common symbol."""
    first = components[group[0]]
    for sym, _ in first.outgoing(state[group[0]]):
        options = [components[c].targets(state[c], sym) for c in group]
        if all(options):
            for combo in itertools.product(*(sorted(o) for o in options)):
                yield sym, combo


def _explore(components, tapes, constraints, budget, stop_at_accept=False):
    """Breadth-first search over joint configurations.

    Returns ``(states, edges, found_accept)``; ``states`` lists configurations
    in discovery order, ``edges`` holds ``(src, label, dst)`` index triples.
    """
    start = tuple(c.start for c in components)
    if not _ok(start, constraints):
        return [], [], False
    index = {start: 0}
    states = [start]
    edges = []
    queue = deque([start])

    def accepting(cfg):
        return all(s in c.accepting for s, c in zip(cfg, components))

    if stop_at_accept and accepting(start):
        return states, edges, True
    subsets = [
        sub for r in range(1, len(tapes) + 1) for sub in itertools.combinations(range(len(tapes)), r)
    ]
    while queue:
        cfg = queue.popleft()
        src = index[cfg]
        for sub in subsets:
            per_tape = [list(_tape_moves(components, tapes[t], cfg)) for t in sub]
            if not all(per_tape):
                continue
            for choice in itertools.product(*per_tape):
                nxt = list(cfg)
                label = [None] * len(tapes)
                for t, (sym, combo) in zip(sub, choice):
                    label[t] = sym
                    for c, s in zip(tapes[t], combo):
                        nxt[c] = s
                nxt = tuple(nxt)
                if not _ok(nxt, constraints):
                    continue
                dst = index.get(nxt)
                if dst is None:
                    if len(states) >= budget:
                        raise ResourceLimitError(
                            f"product exceeded the budget of {budget} states"
                        )
                    dst = index[nxt] = len(states)
                    states.append(nxt)
                    queue.append(nxt)
                    if stop_at_accept and accepting(nxt):
                        return states, edges, True
                edges.append((src, label[0] if len(tapes) == 1 else tuple(label), dst))
    found = any(accepting(cfg) for cfg in states)
    return states, edges, found


def intersect(automata, pinnings=(), budget=DEFAULT_BUDGET):
    """Product automaton accepting the common language, subject to pinnings."""
    automata = list(automata)
    if len(automata) < 2:
        raise DataError("intersection needs at least two automata")
    alphabet = automata[0].alphabet
    for aut in automata[1:]:
        if aut.alphabet != alphabet:
            raise AlphabetMismatchError(
                f"tier {aut.tier!r} alphabet {sorted(map(str, aut.alphabet))} differs from "
                f"{sorted(map(str, alphabet))}"
            )
    names = [a.tier for a in automata]
    constraints = _resolve_pins(names, pinnings)
    for pin in pinnings:
        by_name = {a.tier: a for a in automata}
        pin.check(by_name)
    states, edges, _ = _explore(automata, [list(range(len(automata)))], constraints, budget)
    name = "&".join(names)
    if not states:
        # every configuration reachable from the start is ruled out
        return ProductAutomaton(name, alphabet, [], {}, 0, ())
    transitions = {}
    for src, sym, dst in edges:
        transitions.setdefault((src, sym), set()).add(dst)
    accepting = [
        k for k, cfg in enumerate(states) if all(s in a.accepting for s, a in zip(cfg, automata))
    ]
    return ProductAutomaton(name, alphabet, states, transitions, 0, accepting)


def is_empty(aut):
    """True iff no accepting state is reachable from the start state."""
    if isinstance(aut, ProductAutomaton) and not aut.state_tuples:
        return True
    seen = {aut.start}
    queue = deque([aut.start])
    while queue:
        s = queue.popleft()
        if s in aut.accepting:
            return False
        for _, targets in aut.outgoing(s):
            for t in targets:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return True


def _check_cross(w1, w2, pin):
    for word, name, idx in ((w1, pin.tier_a, 0), (w2, pin.tier_b, 1)):
        if name not in word.tiers:
            raise DanglingPinningError(f"cross-word pinning refers to unknown tier {name!r}")
        n = word.tiers[name].n_states
        for pair in pin.pairs:
            if not 0 <= pair[idx] < n:
                raise DanglingPinningError(f"cross-word pinning refers to missing state {name}:{pair[idx]}")


def compatible(w1, w2, pinnings=(), budget=DEFAULT_BUDGET):
    """Whether two words have a common realisation on every tier.

    ``pinnings`` are extra cross-word pinnings whose ``tier_a`` names a tier
    of ``w1`` and ``tier_b`` a tier of ``w2``.
    """
    if set(w1.tiers) != set(w2.tiers):
        raise TierMismatchError(f"tier sets differ: {sorted(w1.tiers)} vs {sorted(w2.tiers)}")
    components, names, tapes = [], [], []
    for name in sorted(w1.tiers):
        a, b = w1.tiers[name], w2.tiers[name]
        if a.alphabet != b.alphabet:
            raise AlphabetMismatchError(f"tier {name!r} uses different alphabets in the two words")
        tapes.append([len(components), len(components) + 1])
        components += [a, b]
        names += ["1:" + name, "2:" + name]
    lifted = [Pinning("1:" + p.tier_a, "1:" + p.tier_b, p.pairs) for p in w1.pinnings]
    lifted += [Pinning("2:" + p.tier_a, "2:" + p.tier_b, p.pairs) for p in w2.pinnings]
    for p in pinnings:
        _check_cross(w1, w2, p)
        lifted.append(Pinning("1:" + p.tier_a, "2:" + p.tier_b, p.pairs))
    constraints = _resolve_pins(names, lifted)
    _, _, found = _explore(components, tapes, constraints, budget, stop_at_accept=True)
    return found


def word_from_sequences(tiers, pinnings=(), alphabets=None):
    """Build an :class:`AutosegWord` whose tiers are chains over the given symbol lists."""
    alphabets = alphabets or {}
    return AutosegWord(
        {name: from_sequence(name, syms, alphabets.get(name)) for name, syms in tiers.items()},
        pinnings,
    )


def chain_like(tier, n_states, alphabet, rng):
    """A chain of ``n_states`` with a self-loop on every symbol at each state.

    Each state also steps forward on one randomly drawn symbol, and only the
    last state accepts.  The self-loops mean a tier never blocks the others,
    so adding tiers can only enlarge the reachable product.
    """
    alphabet = sorted(alphabet)
    transitions = {}
    for s in range(n_states):
        for sym in alphabet:
            transitions[(s, sym)] = {s}
        if s + 1 < n_states:
            transitions[(s, rng.choice(alphabet))].add(s + 1)
    return TierAutomaton(tier, alphabet, n_states, transitions, 0, {n_states - 1})


@dataclass(frozen=True)
class ProfileRow:
    tiers: int
    product_states: int
    wall_time: float


def intersection_cost_profile(
    tier_counts, states_per_tier, seed=0, alphabet=("a", "b"), budget=DEFAULT_BUDGET
):
    """Measure product size and time of intersecting k random chain-like tiers.

    Tier sets are nested (the run for k tiers uses the first k automata of one
    seeded draw), and trials run sequentially.
    """
    tier_counts = list(tier_counts)
    if not tier_counts or any(k < 2 for k in tier_counts):
        raise ValueError("tier counts must be >= 2")
    if tier_counts != sorted(tier_counts):
        raise ValueError("tier counts must be ascending")
    rng = random.Random(seed)
    pool = [chain_like(f"t{i}", states_per_tier, alphabet, rng) for i in range(max(tier_counts))]
    rows = []
    for k in tier_counts:
        t0 = time.perf_counter()
        product = intersect(pool[:k], budget=budget)
        rows.append(ProfileRow(k, product.visited, time.perf_counter() - t0))
    return rows


def parse_word(text):
    """Parse the automaton text format into an :class:`AutosegWord`."""
    specs = {}
    order = []
    current = None
    pins = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "tier":
            if len(parts) < 4 or parts[2] != "alphabet":
                raise ParseError("expected 'tier <name> alphabet <symbols>'", lineno)
            name = parts[1]
            if name in specs:
                raise ParseError(f"tier {name!r} defined twice", lineno)
            current = specs[name] = {"alphabet": parts[3:], "states": {}, "trans": {}}
            order.append(name)
        elif kind == "pin":
            if len(parts) != 3:
                raise ParseError("expected 'pin <tierA>:<state> <tierB>:<state>'", lineno)
            try:
                (ta, sa), (tb, sb) = (p.rsplit(":", 1) for p in parts[1:])
                sa, sb = int(sa), int(sb)
            except ValueError:
                raise ParseError(f"malformed pin {line!r}", lineno) from None
            pins.setdefault((ta, tb), set()).add((sa, sb))
        elif kind in ("state", "trans"):
            if current is None:
                raise ParseError(f"{kind} line before any tier header", lineno)
            if kind == "state":
                flags = set(parts[2:])
                if len(parts) < 2 or not flags <= {"start", "accept"}:
                    raise ParseError("expected 'state <n> [start] [accept]'", lineno)
                try:
                    n = int(parts[1])
                except ValueError:
                    raise ParseError(f"state number {parts[1]!r} is not an integer", lineno) from None
                if n in current["states"]:
                    raise ParseError(f"state {n} declared twice", lineno)
                current["states"][n] = flags
            else:
                if len(parts) != 4:
                    raise ParseError("expected 'trans <from> <symbol> <to>'", lineno)
                try:
                    src, dst = int(parts[1]), int(parts[3])
                except ValueError:
                    raise ParseError("transition endpoints must be integers", lineno) from None
                current["trans"].setdefault((src, parts[2]), set()).add(dst)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if not specs:
        raise ParseError("no tiers defined")
    tiers = {}
    for name in order:
        spec = specs[name]
        states = spec["states"]
        if sorted(states) != list(range(len(states))):
            raise ParseError(f"tier {name!r}: states must be numbered 0..n-1")
        starts = [n for n, f in states.items() if "start" in f]
        if len(starts) != 1:
            raise ParseError(f"tier {name!r}: exactly one start state required, found {len(starts)}")
        accepting = [n for n, f in states.items() if "accept" in f]
        tiers[name] = TierAutomaton(
            name, spec["alphabet"], len(states), spec["trans"], starts[0], accepting
        )
    pinnings = tuple(Pinning(a, b, frozenset(pairs)) for (a, b), pairs in pins.items())
    return AutosegWord(tiers, pinnings)


def read_word(path):
    with open(path, encoding="utf-8") as fh:
        return parse_word(fh.read())


def format_word(word):
    lines = []
    for name, aut in word.tiers.items():
        lines.append(f"tier {name} alphabet " + " ".join(sorted(map(str, aut.alphabet))))
        for s in aut.states:
            flags = (" start" if s == aut.start else "") + (" accept" if s in aut.accepting else "")
            lines.append(f"state {s}{flags}")
        for (src, sym), targets in sorted(aut.transitions.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
            for dst in sorted(targets):
                lines.append(f"trans {src} {sym} {dst}")
    for pin in word.pinnings:
        for p, q in sorted(pin.pairs):
            lines.append(f"pin {pin.tier_a}:{p} {pin.tier_b}:{q}")
    return "\n".join(lines) + "\n"
