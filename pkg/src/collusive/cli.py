"""Command-line front end.

Every verdict is printed as a ``RESULT <key> <value>`` line; witnesses,
partitions and derivations follow on their own lines.  Exit codes: 0 when
the analysis ran (whatever the verdict), 2 for unreadable input or bad
usage, 3 when a frame violates the frame axioms or a method's hypotheses,
4 when proof search ran out of budget.
"""

from __future__ import annotations

import argparse
import random
import sys
import warnings
from pathlib import Path

from . import agonal, balance, classes, conjecture, modal, textio
from .errors import (FormatError, InvalidFrame, MalformedSequent, ParseError, PreconditionFailed,
                     TooLarge, UnknownAtom, UnknownRelation)
from .formula import parse_formula
from .relations import (BASIC_PROPERTIES, QuadPattern, Relation, check_basic,
                        check_quadrangular, initial_elements, is_collusion, is_collusive_fast)

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_BUDGET = 0, 2, 3, 4

DEFAULT_CHECKS = ["collusive", "collusion", "consistent", "complete"]


class _Out:
    def __init__(self, stream):
        self.stream = stream
        self.keys = set()

    def result(self, key, value):
        key = key.replace("-", "_")
        if key in self.keys:
            raise AssertionError(f"duplicate RESULT key {key}")
        self.keys.add(key)
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.line(f"RESULT {key} {value}")

    def line(self, text=""):
        print(text, file=self.stream)


def _tuple(universe, items) -> str:
    return "(" + ",".join(universe.label(i) for i in items) + ")"


def _set(universe, items) -> str:
    return universe.format(items)


# -- relation -----------------------------------------------------------------

def _property_check(r: Relation, prop: str):
    """Evaluate a named property; returns (holds, witness tuple or None)."""
    key = prop.lower()
    if key.replace("-", "_") in BASIC_PROPERTIES:
        result = check_basic(r, key)
        return result.holds, result.witness
    if key == "collusive":
        return is_collusive_fast(r), check_quadrangular(r, "Q3").witness
    if key == "collusion":
        return is_collusion(r), None
    try:
        pattern = QuadPattern.from_name(key)
    except ValueError:
        raise ValueError(f"unknown check {prop!r}") from None
    result = check_quadrangular(r, pattern)
    return result.holds, result.witness


def cmd_relation(args, out: _Out) -> int:
    doc = textio.read_file(args.file)
    r = doc.relation(args.rel)
    u = r.universe
    checks = args.check or DEFAULT_CHECKS
    report = None
    for check in checks:
        key = check.lower()
        if key in ("consistent", "complete"):
            report = report or agonal.consistency_report(r)
            out.result(key, getattr(report, key))
            if key == "consistent" and report.violation:
                out.line(f"WITNESS consistent {_tuple(u, report.violation)}")
        elif key == "initial":
            out.result("initial", _set(u, initial_elements(r)))
        elif key == "partition":
            try:
                partition = classes.collusion_partition(r)
            except PreconditionFailed as exc:
                out.result("partition", False)
                out.line(f"REASON partition not {exc.prop}")
            else:
                out.result("partition", True)
                for block in partition:
                    out.line(f"BLOCK {_set(u, block)}")
        elif key == "odd-cycle":
            found = classes.has_odd_cycle(r)
            out.result("odd_cycle", found.found)
            if found:
                out.line(f"WITNESS odd_cycle {_tuple(u, found.cycle)}")
        elif key.startswith(("protection-", "actual-protection-")):
            base, prop = key.split("protection-", 1)
            derived = agonal.actual_protection(r) if base == "actual-" else agonal.protection(r)
            holds, witness = _property_check(derived, prop)
            out.result(key, holds)
            if witness is not None:
                out.line(f"WITNESS {key.replace('-', '_')} {_tuple(u, witness)}")
        else:
            holds, witness = _property_check(r, key)
            out.result(key, holds)
            if witness is not None:
                out.line(f"WITNESS {key.replace('-', '_')} {_tuple(u, witness)}")
    if args.emit_protection:
        out.line("PROTECTION")
        out.stream.write(textio.dump(u, {"protection": agonal.protection(r),
                                         "actual-protection": agonal.actual_protection(r)}))
    return EXIT_OK


# -- balance ------------------------------------------------------------------

def _load_frame(path) -> balance.SignedFrame:
    doc = textio.read_file(path)
    for name in ("R+", "R-"):
        if name not in doc.relations:
            raise FormatError(f"frame file needs a 'rel {name}' section")
    return balance.SignedFrame(doc.universe, doc.relations["R+"], doc.relations["R-"])


def _print_diagnostics(out, universe, diagnostics):
    for axiom, witness in diagnostics.violations:
        out.line(f"VIOLATION {axiom} {_tuple(universe, witness)}")


def cmd_balance(args, out: _Out) -> int:
    f = _load_frame(args.file)
    u = f.universe
    diagnostics = balance.validate_frame(f)
    out.result("frame_valid", diagnostics.valid)
    if not diagnostics.valid:
        _print_diagnostics(out, u, diagnostics)
        print(f"error: {diagnostics.summary()}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    out.result("ssf", diagnostics.ssf)
    out.result("cc", diagnostics.cc)
    mode = args.mode
    out.result("mode", mode)
    methods = ["local", "partition", "cycle", "collusion"] if args.method == "all" else [args.method]
    verdicts = {}
    for method in methods:
        applicable = True
        if method in ("local", "collusion") and not (diagnostics.cc and diagnostics.ssf):
            applicable = False
        if method == "partition" and mode == "strong" and not diagnostics.ssf:
            applicable = False
        if not applicable:
            if args.method != "all":
                print(f"error: method {method!r} requires a c.c. s.s.f."
                      f"{'' if diagnostics.cc else ' (frame is not collectively connected)'}"
                      f"{'' if diagnostics.ssf else ' (R- is not symmetric)'}", file=sys.stderr)
                return EXIT_HYPOTHESIS
            out.result(method, "n/a")
            continue
        if method == "local":
            check = balance.is_locally_balanced if mode == "strong" else balance.is_locally_weak_balanced
            result = check(f)
            verdicts[method] = result.holds
            out.result(method, result.holds)
            if result.witness:
                out.line(f"WITNESS local {_tuple(u, result.witness)}")
        elif method == "partition":
            if mode == "strong":
                partition = balance.strong_balance_partition(f)
                blocks = partition
            else:
                partition = balance.weak_balance_partition(f)
                blocks = partition.blocks if partition else None
            verdicts[method] = partition is not None
            out.result(method, partition is not None)
            for block in (b for b in blocks or () if b):
                out.line(f"BLOCK {_set(u, block)}")
        elif method == "cycle":
            result = balance.cycle_criterion(f, mode, args.cycle_method)
            verdicts[method] = result.holds
            out.result(method, result.holds)
            if result.witness:
                out.line(f"WITNESS cycle {_tuple(u, result.witness)}")
        elif method == "collusion":
            holds = balance.balance_via_collusion(f, mode)
            verdicts[method] = holds
            out.result(method, holds)
    out.result("agreement", len(set(verdicts.values())) <= 1)
    if args.census:
        census = balance.classify_triads(f)
        out.line(f"CENSUS a={census.a} b={census.b} c={census.c} d={census.d} open={census.open}")
    return EXIT_OK


# -- modal --------------------------------------------------------------------

def cmd_modal(args, out: _Out) -> int:
    doc = textio.read_file(args.file)
    u = doc.universe
    if args.axiom_c:
        r = doc.relation(args.rel)
        result = modal.frame_validates_C(r)
        out.result("axiom_c", result.holds)
        out.result("collusive", is_collusive_fast(r))
        if not result:
            worlds, world = result.witness
            out.line(f"countermodel q={_set(u, worlds)} world={u.label(world)}")
        return EXIT_OK
    phi = parse_formula(args.formula)
    model = modal.KripkeModel(u, doc.relations, doc.valuation)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", modal.UnknownAtomWarning)
        truth = modal.extension(model, phi, strict=args.strict)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    for w in range(u.size):
        out.line(f"WORLD {u.label(w)} {'true' if w in truth else 'false'}")
    out.result("true_everywhere", len(truth) == u.size)
    out.result("extension", _set(u, truth))
    return EXIT_OK


# -- prove ----------------------------------------------------------------------

def cmd_prove(args, out: _Out) -> int:
    from .prover import SystemConfig, check_derivation, countermodel, parse_rules, parse_sequent, prove
    from .prover.presets import get_preset
    from .prover.render import render_derivation

    if args.preset:
        preset = get_preset(args.preset)
        goal = preset.goal()
        rules = parse_rules(args.rules if args.rules is not None else preset.rules)
    elif args.sequent:
        goal = parse_sequent(args.sequent)
        rules = parse_rules(args.rules or "")
    else:
        raise MalformedSequent("give a sequent or --preset")
    cfg = SystemConfig(rules, max_fresh=args.max_fresh, max_depth=args.max_depth)
    rng = random.Random(args.seed) if args.shuffle else None
    result = prove(goal, cfg, rng=rng)
    out.result("proved", result.proved)
    out.result("status", result.status)
    out.result("rules", cfg.describe())
    out.result("search_nodes", result.stats.nodes)
    if result.proved:
        verdict = check_derivation(result.derivation, cfg)
        out.result("kernel", "ok" if verdict else f"rejected at {verdict.path}")
        out.result("derivation_nodes", result.derivation.size())
        out.stream.write(render_derivation(result.derivation, args.format))
        return EXIT_OK
    if result.status == "saturated":
        out.line(f"COUNTERSEQUENT {result.countersequent}")
        model, labels = countermodel(result.countersequent, cfg.relations)
        for name, r in sorted(model.relations.items()):
            out.line(f"MODEL {name} {r.format()}")
        for atom, worlds in sorted(model.valuation.items()):
            out.line(f"MODEL val {atom} {model.universe.format(worlds)}")
        return EXIT_OK
    out.line(f"STATS deepest={result.stats.deepest} fresh={result.stats.most_fresh} "
             f"exhausted={result.stats.budget_reason}")
    return EXIT_BUDGET


# -- conjecture -------------------------------------------------------------------

def cmd_conjecture(args, out: _Out) -> int:
    summary = conjecture.conjecture_search(args.max_n, args.samples, args.seed)
    text = conjecture.render_summary(summary)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii", newline="\n")
    out.stream.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collusive", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["text", "latex"], default="text",
                        help="derivation output format (prove)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relation", help="check properties of a relation")
    p.add_argument("file")
    p.add_argument("--rel", help="relation section to use (default: the only one)")
    p.add_argument("--check", action="append", type=lambda s: [c for c in s.split(",") if c],
                   help="comma-separated checks: collusive, collusion, q1..q8, confluent, co-confluent, "
                        f"{', '.join(BASIC_PROPERTIES)}, consistent, complete, initial, partition, "
                        "odd-cycle, protection-<check>, actual-protection-<check>")
    p.add_argument("--emit-protection", action="store_true", help="dump the protection relations")
    p.set_defaults(run=cmd_relation)

    p = sub.add_parser("balance", help="analyze a signed frame")
    p.add_argument("file")
    p.add_argument("--mode", choices=["strong", "weak"], default="strong")
    p.add_argument("--method", choices=["all", "local", "partition", "cycle", "collusion"], default="all")
    p.add_argument("--cycle-method", choices=["fast", "bruteforce"], default="fast")
    p.add_argument("--census", action="store_true", help="print the triad census")
    p.set_defaults(run=cmd_balance)

    p = sub.add_parser("modal", help="evaluate formulas or test the collusiveness scheme")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula")
    group.add_argument("--axiom-c", action="store_true")
    p.add_argument("--rel", help="relation used by --axiom-c (default: the only one)")
    p.add_argument("--strict", action="store_true", help="unknown atoms are errors")
    p.set_defaults(run=cmd_modal)

    p = sub.add_parser("prove", help="proof search in the labeled sequent calculus")
    p.add_argument("sequent", nargs="?", help="e.g. 'x : <f R> p, x R y |- y : p'")
    p.add_argument("--preset")
    p.add_argument("--rules", help="e.g. refl:R+,symm:R+,nover:R+:R-,cc:R+:R-")
    p.add_argument("--max-fresh", type=int, default=8)
    p.add_argument("--max-depth", type=int, default=64)
    p.add_argument("--shuffle", action="store_true", help="randomize rule order using --seed")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("conjecture", help="search for counterexamples to the balance conjecture")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--output")
    p.set_defaults(run=cmd_conjecture)
    return parser


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "check", None):
        args.check = [c for group in args.check for c in group]
    out = _Out(stdout or sys.stdout)
    try:
        return args.run(args, out)
    except (FormatError, ParseError, MalformedSequent, UnknownRelation, UnknownAtom, OSError) as exc:
        where = f"{args.file}: " if getattr(args, "file", None) else ""
        print(f"error: {where}{exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidFrame, PreconditionFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
