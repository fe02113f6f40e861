"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 product-state
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import alignment, autoseg, harness, soundex
from .errors import DataError, PhonoError, ResourceLimitError
from .features import DEFAULT_WEIGHTS, read_weights, template_distance
from .inventory import default_inventory, parse_sequence, read_inventory

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(round(x, 10))


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--inventory", help="inventory TSV (default: built-in General American)")
    p.add_argument("--weights", help="weight profile file of key=value lines")
    p.add_argument("--indel-cost", type=float, help="override the insertion/deletion cost")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    return p


def _inventory(args):
    return read_inventory(args.inventory) if args.inventory else default_inventory()


def _weights(args):
    w = read_weights(args.weights) if args.weights else DEFAULT_WEIGHTS
    if args.indel_cost is not None:
        try:
            w = w.with_(indel_cost=args.indel_cost)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return w


def cmd_soundex(args, out):
    names = list(args.names)
    if args.file:
        names += soundex.read_names(args.file)
    if not names:
        raise UsageError("give at least one name or --file")
    if any(not n.strip() for n in names):
        raise UsageError("empty name")
    rows = [(n, soundex.encode(n)) for n in names]
    if args.json:
        for n, c in rows:
            out.write(json.dumps({"name": n, "code": str(c)}) + "\n")
    else:
        for n, c in rows:
            out.write(f"{n} {c}\n")


def cmd_collisions(args, out):
    names = list(args.names)
    if args.file:
        names += soundex.read_names(args.file)
    if not names:
        raise UsageError("give at least one name or --file")
    out.write(soundex.collision_jsonl(soundex.collisions(names)))


def cmd_dist(args, out):
    inv = _inventory(args)
    w = _weights(args)
    a, b = parse_sequence(args.a, inv), parse_sequence(args.b, inv)
    if args.template:
        d = template_distance(a, b, w, normalize=args.normalize)
        if args.json:
            out.write(json.dumps({"mode": "template", "distance": d}) + "\n")
        else:
            out.write(fmt(d) + "\n")
        return
    d, al = alignment.word_distance(a, b, w, normalize=args.normalize)
    if args.json:
        out.write(json.dumps({"mode": "alignment", "distance": d, "alignment": al.to_dict()}) + "\n")
    else:
        out.write(fmt(d) + "\n" + al.render() + "\n")


def cmd_knn(args, out):
    inv = _inventory(args)
    w = _weights(args)
    if args.k < 1:
        raise UsageError("-k must be at least 1")
    entries = alignment.read_lexicon(args.lexicon, inv)
    query = parse_sequence(args.query, inv)
    # entries sharing a pronunciation are reported together
    words = {}
    for e in entries:
        words.setdefault(e.pron.symbols, []).append(e.word)
    unique = {}
    for e in entries:
        unique.setdefault(e.pron.symbols, e.pron)
    hits = alignment.knn(query, list(unique.values()), args.k, w)
    if args.json:
        for seq, d in hits:
            out.write(json.dumps({"words": words[seq.symbols], "pron": seq.format(), "distance": d}) + "\n")
    else:
        for rank, (seq, d) in enumerate(hits, start=1):
            out.write(f"{rank}\t{','.join(words[seq.symbols])}\t{seq.format()}\t{fmt(d)}\n")


def _parse_pin(text):
    try:
        left, right = text.split()
        (ta, sa), (tb, sb) = left.rsplit(":", 1), right.rsplit(":", 1)
        return autoseg.Pinning(ta, tb, frozenset({(int(sa), int(sb))}))
    except ValueError:
        raise UsageError(f"--pin expects 'tierA:state tierB:state', got {text!r}") from None


def cmd_autoseg(args, out):
    w1, w2 = autoseg.read_word(args.word1), autoseg.read_word(args.word2)
    pins = [_parse_pin(p) for p in args.pin]
    ok = autoseg.compatible(w1, w2, pins, budget=args.budget)
    if args.json:
        out.write(json.dumps({"compatible": ok}) + "\n")
    else:
        out.write(("compatible" if ok else "incompatible") + "\n")


def cmd_profile(args, out):
    rows = autoseg.intersection_cost_profile(
        args.tiers, args.states, seed=args.seed, budget=args.budget
    )
    if args.json:
        for r in rows:
            rec = {"tiers": r.tiers, "product_states": r.product_states, "bound": args.states**r.tiers}
            if args.timings:
                rec["wall_time_s"] = r.wall_time
            out.write(json.dumps(rec) + "\n")
    else:
        for r in rows:
            line = f"{r.tiers}\t{r.product_states}\t{args.states ** r.tiers}"
            if args.timings:
                line += f"\t{r.wall_time:.6f}"
            out.write(line + "\n")


def cmd_eval(args, out):
    inv = _inventory(args)
    lexicon = alignment.read_lexicon(args.lexicon, inv) if args.lexicon else harness.toy_lexicon()
    gold = harness.read_gold_pairs(args.gold) if args.gold else None
    config = harness.HarnessConfig(
        seed=args.seed,
        trials=args.trials,
        weights=_weights(args),
        gold_pairs=tuple(gold) if gold is not None else None,
        budget=args.budget,
        timings=args.timings,
    )
    reports = harness.compare_schemes(lexicon, config)
    if args.json:
        out.write(harness.report_json(reports, config))
    else:
        out.write(harness.report_table(reports, config))


def build_parser():
    common = _common()
    parser = _Parser(prog="phonodist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("soundex", parents=[common], help="SOUNDEX codes for names")
    p.add_argument("names", nargs="*")
    p.add_argument("--file", help="name list, one per line")
    p.set_defaults(func=cmd_soundex)

    p = sub.add_parser("collisions", parents=[common], help="group names by SOUNDEX code (JSON lines)")
    p.add_argument("names", nargs="*")
    p.add_argument("--file", help="name list, one per line")
    p.set_defaults(func=cmd_collisions)

    p = sub.add_parser("dist", parents=[common], help="distance between two phoneme sequences")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--template", action="store_true", help="positionwise comparison (equal lengths only)")
    p.add_argument("--normalize", action="store_true", help="divide by sequence length")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("knn", parents=[common], help="nearest lexicon entries to a query")
    p.add_argument("query")
    p.add_argument("--lexicon", required=True, help="word<TAB>pronunciation file")
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=cmd_knn)

    p = sub.add_parser("autoseg", parents=[common], help="compatibility of two tier-automaton words")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--pin", action="append", default=[], help="cross-word pinning 'tierA:state tierB:state'")
    p.add_argument("--budget", type=int, default=autoseg.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_autoseg)

    p = sub.add_parser("profile", parents=[common], help="product-state growth of tier intersection")
    p.add_argument("--tiers", type=int, nargs="+", default=[2, 3, 4, 5])
    p.add_argument("--states", type=int, default=8)
    p.add_argument("--budget", type=int, default=autoseg.DEFAULT_BUDGET)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("eval", parents=[common], help="desiderata report for all three schemes")
    p.add_argument("--lexicon", help="word<TAB>pronunciation file (default: built-in toy lexicon)")
    p.add_argument("--gold", help="name1<TAB>name2<TAB>same|different file")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--budget", type=int, default=autoseg.DEFAULT_BUDGET)
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical output)")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"phonodist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"phonodist: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DataError, PhonoError, OSError) as exc:
        print(f"phonodist: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"phonodist: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
