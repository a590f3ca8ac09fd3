"""Command-line front-end.

Subcommands cover every core operation: normal forms, products, applying
and validating derivations, commutator derivations, obstruction scans,
witness search and the rewriting selfcheck.  `--json` switches any
subcommand to machine-readable output; elements are emitted as
[monomial word, numerator, denominator] triples.

Exit codes: 0 success / empty report, 1 nonempty report or no witness,
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .algebra import AlgebraConfig, generator_name, reduce_word
from .derivation import (
    DerivationSpec,
    check_coefficient_equations,
    check_relations,
    extend,
    load_derivation_file,
)
from .expr import ExprError, element_to_triples, format_element, parse_element
from .inner import (
    ObstructionVerdict,
    ad,
    classify_by_obstruction,
    find_inner_witness,
    obstruction_coefficients,
)
from .oracle import check_overlaps, exhaustive_reduce


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="exact computation in the one-vertex loop-graph Leavitt path algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text, *, loops=False, deriv=False):
        p = sub.add_parser(name, help=help_text)
        if loops:
            p.add_argument("--loops", type=int, required=True, metavar="L")
        if deriv:
            p.add_argument("--deriv", required=True, metavar="FILE")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = command("normalize", "reduce an expression to canonical form", loops=True)
    p.add_argument("expression")

    p = command("mul", "multiply two expressions", loops=True)
    p.add_argument("left")
    p.add_argument("right")

    p = command("derive", "apply a derivation file to an expression", deriv=True)
    p.add_argument("expression")

    p = command("ad", "generator values of the commutator derivation", loops=True)
    p.add_argument("element")

    command("check", "validate a derivation file against the relations", deriv=True)

    command("coeff-check", "validate the scalar coefficient equations", deriv=True)

    p = command("obstructions", "scan for obstruction coefficients", deriv=True)
    p.add_argument("--strict-omega", action="store_true",
                   help="exclude the trivial path (index word e1 e1)")

    p = command("witness", "search for lam with ad(lam) = D", deriv=True)
    p.add_argument("--max-len", type=int, required=True, metavar="N")

    p = command("selfcheck", "compare random-order rewriting with the reducer",
                loops=True)
    p.add_argument("--words", type=int, default=200, metavar="N")
    p.add_argument("--max-word-len", type=int, default=8, metavar="K")
    p.add_argument("--seed", type=int, default=0, metavar="S")

    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_spec(args) -> DerivationSpec:
    return load_derivation_file(args.deriv)


def _report_output(args, report, heading: str) -> int:
    if args.json:
        payload = {"violations": [
            {"equation": violation.equation,
             "indices": [str(ix) for ix in violation.indices],
             "residual": (element_to_triples(violation.residual)
                          if hasattr(violation.residual, "terms")
                          else [str(violation.residual)])}
            for violation in report]}
        print(json.dumps(payload, sort_keys=True))
    elif report.empty:
        print(f"{heading}: ok")
    else:
        for violation in report:
            print(violation.describe())
    return 1 if report else 0


def _cmd_normalize(args) -> int:
    cfg = AlgebraConfig(args.loops)
    element = parse_element(args.expression, cfg)
    _emit(args, {"terms": element_to_triples(element)}, format_element(element))
    return 0


def _cmd_mul(args) -> int:
    cfg = AlgebraConfig(args.loops)
    product = parse_element(args.left, cfg) * parse_element(args.right, cfg)
    _emit(args, {"terms": element_to_triples(product)}, format_element(product))
    return 0


def _cmd_derive(args) -> int:
    spec = _load_spec(args)
    report = check_relations(spec)
    if report:
        code = _report_output(args, report, "relations")
        if not args.json:
            print("derivation file is invalid; refusing to extend", file=sys.stderr)
        return code
    element = parse_element(args.expression, spec.cfg)
    value = extend(spec, element)
    _emit(args, {"terms": element_to_triples(value)}, format_element(value))
    return 0


def _cmd_ad(args) -> int:
    cfg = AlgebraConfig(args.loops)
    spec = ad(cfg, parse_element(args.element, cfg))
    if args.json:
        payload = {"values": {
            generator_name(g): element_to_triples(spec.value(g))
            for g in cfg.generators()}}
        print(json.dumps(payload, sort_keys=True))
    else:
        for g in cfg.generators():
            print(f"D({generator_name(g)}) = {format_element(spec.value(g))}")
    return 0


def _cmd_check(args) -> int:
    return _report_output(args, check_relations(_load_spec(args)), "relations")


def _cmd_coeff_check(args) -> int:
    return _report_output(
        args, check_coefficient_equations(_load_spec(args)), "coefficient equations")


def _cmd_obstructions(args) -> int:
    spec = _load_spec(args)
    report = obstruction_coefficients(spec, include_trivial_p=not args.strict_omega)
    verdict = classify_by_obstruction(spec, include_trivial_p=not args.strict_omega)
    if args.json:
        payload = {
            "include_trivial_p": report.include_trivial_p,
            "classification": verdict.value,
            "entries": [
                {"family": entry.family,
                 "generator": generator_name(entry.generator),
                 "word": " ".join(f"e{i}" for i in entry.word),
                 "value": [entry.value.numerator, entry.value.denominator]}
                for entry in report],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for entry in report:
            print(entry.describe())
        print(f"classification: {verdict.value}")
    return 1 if report else 0


def _cmd_witness(args) -> int:
    spec = _load_spec(args)
    witness = find_inner_witness(spec, args.max_len)
    if args.json:
        payload = {"max_len": args.max_len,
                   "witness": None if witness is None else element_to_triples(witness)}
        print(json.dumps(payload, sort_keys=True))
    elif witness is None:
        print(f"none up to {args.max_len}")
    else:
        print(format_element(witness))
    return 1 if witness is None else 0


def _cmd_selfcheck(args) -> int:
    cfg = AlgebraConfig(args.loops)
    rng = random.Random(args.seed)
    alphabet = [0] + [i for k in cfg.edge_indices() for i in (k, -k)]
    seeds_per_word = 5
    disagreements = []
    for n in range(args.words):
        word = tuple(rng.choice(alphabet)
                     for _ in range(rng.randint(0, args.max_word_len)))
        expected = reduce_word(cfg, word)
        for s in range(seeds_per_word):
            got = exhaustive_reduce(cfg, word, rng_seed=args.seed + 1000 * n + s)
            if got != expected:
                disagreements.append(
                    {"word": [generator_name(g) for g in word], "seed": args.seed + 1000 * n + s})
    overlap_report = check_overlaps(cfg)
    ok = not disagreements and overlap_report.empty
    if args.json:
        payload = {
            "words": args.words,
            "seeds_per_word": seeds_per_word,
            "disagreements": disagreements,
            "overlap_violations": [v.describe() for v in overlap_report],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"reducer agreement: {args.words} words x {seeds_per_word} seeds, "
              f"{len(disagreements)} disagreements")
        print(f"overlap check: {'ok' if overlap_report.empty else 'FAILED'}")
    return 0 if ok else 1


_HANDLERS = {
    "normalize": _cmd_normalize,
    "mul": _cmd_mul,
    "derive": _cmd_derive,
    "ad": _cmd_ad,
    "check": _cmd_check,
    "coeff-check": _cmd_coeff_check,
    "obstructions": _cmd_obstructions,
    "witness": _cmd_witness,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ExprError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
