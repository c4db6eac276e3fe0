"""``supctl`` command line.  Exit status: 0 ok, 1 property violated, 2 bad usage or input."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks, mutual, oracle
from .coordination import build_coordinator, check_cond_decomposable, compare, extend_coordinator_alphabet
from .errors import BoundError, InclusionError, SupctlError, TheoremViolation
from .fsa import enumerate_language, fmt_word
from .supervisor import Supervisor, closed_loop, induce_supervisor
from .synthesis import Flavor, synthesize
from .textio import (generator_to_dict, read_alphabet, read_generator, serialize_generator,
                     to_dot, write_generator)

OK, VIOLATION, USAGE = 0, 1, 2
DEFAULT_MAX_LEN = 4

CHECKS = ("controllability", "observability", "normality", "relobs")
FLAVORS = ("supc", "supn", "supr", "supR", "supcn", "supcr")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--max-len", type=int, default=d(DEFAULT_MAX_LEN),
                   help="length bound for listing strings in reports (default %d)" % DEFAULT_MAX_LEN)
    p.add_argument("--oracle-bound", type=int, default=d(None),
                   help="state (or transition) bound for the brute-force oracles")
    p.add_argument("--seed", type=int, default=d(None), help="seed for gen")
    p.add_argument("--dot", metavar="PATH", default=d(None), help="also write the main result as DOT")
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="supctl", description="Supremal synthesis and modular control for discrete-event systems.")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="decide a property of K w.r.t. L")
    p.add_argument("property", choices=CHECKS)
    p.add_argument("--spec", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("--ambient", help="ambient language C for relobs (default: K)")

    p = sub.add_parser("synth", parents=[common], help="supremal sublanguage")
    p.add_argument("flavor", choices=FLAVORS)
    p.add_argument("--spec", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--ambient-L", dest="ambient_l", action="store_true",
                   help="for supr: use the plant language as ambient (same as supR)")

    p = sub.add_parser("realize", parents=[common], help="induce a supervisor for a target language")
    p.add_argument("--target", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("-o", "--output")

    p = sub.add_parser("closedloop", parents=[common], help="closed-loop language of a supervisor")
    p.add_argument("--sup", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("-o", "--output")

    p = sub.add_parser("mutual", parents=[common], help="mutual condition between two local plants")
    p.add_argument("condition", choices=sorted(mutual.CHECKS))
    p.add_argument("--l1", required=True)
    p.add_argument("--l2", required=True)
    p.add_argument("--k1")
    p.add_argument("--k2")
    p.add_argument("--global-alphabet")

    p = sub.add_parser("coord", parents=[common], help="coordinator alphabet and coordinator")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--ak", help="comma-separated coordinator events (default: greedy extension)")
    p.add_argument("-o", "--output")

    p = sub.add_parser("compare", parents=[common], help="modular vs monolithic synthesis")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--flavor", required=True, choices=["c", "n", "r", "R", "cn", "cr"])
    p.add_argument("--ak")
    p.add_argument("--report")

    p = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    p.add_argument("operator", choices=FLAVORS + ("maxobs",))
    p.add_argument("--spec", required=True)
    p.add_argument("--plant", required=True)
    p.add_argument("--controllable", action="store_true", help="maxobs: also require controllability")
    p.add_argument("-o", "--output")

    p = sub.add_parser("gen", parents=[common], help="write a seeded random instance")
    p.add_argument("--params", default="", help="comma-separated key=value overrides")
    p.add_argument("--out", default=".", help="output directory")
    return parser


# -- helpers ---------------------------------------------------------------

def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _language_lines(g, max_len) -> list[str]:
    words = sorted(enumerate_language(g, max_len).words, key=lambda w: (len(w), w))
    return [fmt_word(w) for w in words]


def _result_payload(args, g) -> dict:
    return {"result": generator_to_dict(g), "max_len": args.max_len,
            "strings": _language_lines(g, args.max_len)}


def _result_text(args, g) -> str:
    if g.is_empty:
        return "EMPTY"
    return serialize_generator(g) + f"strings up to length {args.max_len}: " + ", ".join(_language_lines(g, args.max_len))


def _write_outputs(args, g) -> None:
    if getattr(args, "output", None):
        write_generator(g, args.output)
    if args.dot:
        Path(args.dot).write_text(to_dot(g), encoding="utf-8")


def _bound(args, default):
    return default if args.oracle_bound is None else args.oracle_bound


# -- commands --------------------------------------------------------------

def cmd_check(args) -> int:
    k, l = read_generator(args.spec), read_generator(args.plant)
    if args.property == "controllability":
        wit = checks.check_controllability(k, l)
    elif args.property == "observability":
        wit = checks.check_observability(k, l)
    elif args.property == "normality":
        wit = checks.check_normality(k, l)
    else:
        c = read_generator(args.ambient) if args.ambient else k
        wit = checks.check_rel_observability(k, c, l)
    payload = {"command": "check", "property": args.property, "holds": wit is None,
               "witness": None if wit is None else wit.to_dict()}
    _emit(args, payload, "ok" if wit is None else f"violated: {wit}")
    return OK if wit is None else VIOLATION


def cmd_synth(args) -> int:
    k, l = read_generator(args.spec), read_generator(args.plant)
    flavor = Flavor.parse(args.flavor)
    if args.ambient_l and flavor is Flavor.R_K:
        flavor = Flavor.R_L
    g = synthesize(k, l, flavor)
    _write_outputs(args, g)
    payload = {"command": "synth", "flavor": flavor.cli_name, **_result_payload(args, g)}
    _emit(args, payload, _result_text(args, g))
    return OK


def cmd_realize(args) -> int:
    k, l = read_generator(args.target), read_generator(args.plant)
    sup = induce_supervisor(k, l)
    doc = sup.to_dict()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    lines = [f"observer states: {len(sup.observer)}"]
    for q in sup.observer.states:
        lines.append(f"  {q}: enable {{{', '.join(sorted(sup.patterns[q]))}}}")
    lines.append(f"  otherwise: enable {{{', '.join(sorted(sup.default))}}}")
    _emit(args, {"command": "realize", "supervisor": doc}, "\n".join(lines))
    return OK


def cmd_closedloop(args) -> int:
    try:
        doc = json.loads(Path(args.sup).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SupctlError(f"cannot read {args.sup}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SupctlError(f"{args.sup}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    sup = Supervisor.from_dict(doc)
    g = closed_loop(sup, read_generator(args.plant))
    _write_outputs(args, g)
    _emit(args, {"command": "closedloop", **_result_payload(args, g)}, _result_text(args, g))
    return OK


def cmd_mutual(args) -> int:
    l1, l2 = read_generator(args.l1), read_generator(args.l2)
    k1 = read_generator(args.k1) if args.k1 else None
    k2 = read_generator(args.k2) if args.k2 else None
    alphabet = read_alphabet(args.global_alphabet) if args.global_alphabet else None
    inst = mutual.ModularInstance(l1, l2, alphabet, k1, k2)
    wit = mutual.check_condition(args.condition, inst)
    payload = {"command": "mutual", "condition": args.condition, "holds": wit is None,
               "witness": None if wit is None else wit.to_dict()}
    _emit(args, payload, "ok" if wit is None else f"violated: {wit}")
    return OK if wit is None else VIOLATION


def _events_arg(text):
    return frozenset(e.strip() for e in text.split(",") if e.strip())


def cmd_coord(args) -> int:
    g1, g2, k = read_generator(args.g1), read_generator(args.g2), read_generator(args.spec)
    if args.ak is not None:
        ak = _events_arg(args.ak)
    else:
        ak = extend_coordinator_alphabet(k, g1.events, g2.events)
    ok, wit = check_cond_decomposable(k, g1.events, g2.events, ak)
    gk = build_coordinator(g1, g2, ak)
    _write_outputs(args, gk)
    payload = {"command": "coord", "coordinator_alphabet": sorted(ak), "decomposable": ok,
               "witness": None if wit is None else list(wit), "coordinator": generator_to_dict(gk)}
    text = f"A'_k = {{{', '.join(sorted(ak))}}}\nconditionally decomposable: {'yes' if ok else 'no, ' + fmt_word(wit)}\n"
    _emit(args, payload, text + serialize_generator(gk))
    return OK if ok else VIOLATION


def cmd_compare(args) -> int:
    g1, g2, k = read_generator(args.g1), read_generator(args.g2), read_generator(args.spec)
    ak = _events_arg(args.ak) if args.ak is not None else None
    try:
        report = compare(g1, g2, k, args.flavor, ak)
    except TheoremViolation as exc:
        doc = {"command": "compare", "theorem_violation": str(exc), **exc.diagnostics}
        if args.report:
            Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        _emit(args, doc, f"THEOREM CHECK FAILED: {exc}\npremises: {exc.diagnostics.get('premises')}")
        return VIOLATION
    doc = {"command": "compare", **report.to_dict()}
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    if args.dot:
        Path(args.dot).write_text(to_dot(report.modular), encoding="utf-8")
    conds = ", ".join(f"{n}={'yes' if w is None else 'no'}" for n, w in report.conditions.items())
    text = "\n".join([
        f"flavor {report.flavor.cli_name}; A'_k = {{{', '.join(sorted(report.coordinator_alphabet))}}}",
        f"conditions: {conds}" + (" (heuristic: no theorem covers this flavor)" if report.heuristic else ""),
        f"safety: monolithic {report.safety_monolithic}, modular {report.safety_modular}",
        f"modular within monolithic: {report.inclusion_modular_in_monolithic}",
        f"equal: {report.equality}",
    ])
    _emit(args, doc, text)
    return OK


def cmd_oracle(args) -> int:
    k, l = read_generator(args.spec), read_generator(args.plant)
    if args.operator == "maxobs":
        found = oracle.brute_maximal_observable(k, l, with_controllability=args.controllable,
                                                bound=_bound(args, oracle.MAXIMAL_BOUND))
        payload = {"command": "oracle", "operator": "maxobs",
                   "results": [generator_to_dict(g) for g in found]}
        text = f"{len(found)} maximal sublanguage(s)\n" + "\n".join(_result_text(args, g) for g in found)
        if found:
            _write_outputs(args, found[0])
        _emit(args, payload, text)
        return OK
    g = oracle.brute_supremal(k, l, args.operator, bound=_bound(args, oracle.SUPREMAL_BOUND))
    _write_outputs(args, g)
    payload = {"command": "oracle", "operator": args.operator, **_result_payload(args, g)}
    _emit(args, payload, _result_text(args, g))
    return OK


def _parse_params(text: str) -> oracle.InstanceParams:
    fields = oracle.InstanceParams.__dataclass_fields__
    kw = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in fields:
            raise SupctlError(f"unknown parameter {item!r}; known: {', '.join(fields)}")
        kind = type(fields[key].default)
        try:
            if kind is bool:
                kw[key] = value.strip().lower() in ("1", "true", "yes")
            else:
                kw[key] = kind(value)
        except ValueError:
            raise SupctlError(f"bad value for {key}: {value!r}") from None
    return oracle.InstanceParams(**kw)


def cmd_gen(args) -> int:
    params = _parse_params(args.params)
    seed = 0 if args.seed is None else args.seed
    inst = oracle.random_instance(seed, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    if params.modular:
        parts = {"g1": inst.g1, "g2": inst.g2, "spec": inst.k}
    else:
        parts = {"spec": inst.k, "plant": inst.l}
    for name, g in parts.items():
        path = out / f"{name}.gen"
        write_generator(g, path)
        files[name] = str(path)
    _emit(args, {"command": "gen", "seed": seed, "files": files},
          "\n".join(f"{n}: {p}" for n, p in files.items()))
    return OK


COMMANDS = {"check": cmd_check, "synth": cmd_synth, "realize": cmd_realize, "closedloop": cmd_closedloop,
            "mutual": cmd_mutual, "coord": cmd_coord, "compare": cmd_compare, "oracle": cmd_oracle,
            "gen": cmd_gen}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"supctl: error: {exc}", file=sys.stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (InclusionError, BoundError, SupctlError) as exc:
        if args.json:
            print(json.dumps({"command": args.command, "error": str(exc)}, sort_keys=True))
        print(f"supctl: error: {exc}", file=sys.stderr)
        return USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
