"""Command-line front end.

Exit codes: 0 certificate (or success), 1 counterexample (or a failed
root/verification request), 2 invalid input, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from typing import TextIO

from . import serialize
from .certify import Certificate, check_theorem1, corollary1_check, corollary2_check
from .errors import Inconclusive, IntersectiveError
from .family import Family, validate_family
from .lifting import root_mod
from .oracle import SCAN_BUDGET, has_root_mod, minimal_failing_modulus, verify_counterexample
from .search import SearchQuery, search_families
from .squaresubsets import PRIME_SEARCH_BOUND, SUBSET_CAP

EXIT_CERTIFICATE, EXIT_COUNTEREXAMPLE, EXIT_INVALID, EXIT_INCONCLUSIVE = 0, 1, 2, 3

ENV_SETTINGS = {
    "scan_budget": ("INTERSECTIVE_SCAN_BUDGET", SCAN_BUDGET),
    "prime_bound": ("INTERSECTIVE_PRIME_BOUND", PRIME_SEARCH_BOUND),
    "subset_cap": ("INTERSECTIVE_SUBSET_CAP", SUBSET_CAP),
}

_NEGATIVE_FAMILY = re.compile(r"^-\d+(,\s*-?\d+)+$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _settings() -> dict[str, int]:
    out = {}
    for key, (var, default) in ENV_SETTINGS.items():
        raw = os.environ.get(var)
        if raw is None:
            out[key] = default
            continue
        try:
            out[key] = int(raw)
        except ValueError:
            raise UsageError(f"{var} must be an integer, got {raw!r}") from None
        if out[key] < 1:
            raise UsageError(f"{var} must be positive")
    return out


def _family(token: str) -> Family:
    values = []
    for part in token.strip().split(","):
        try:
            values.append(int(part))
        except ValueError:
            raise UsageError(f"family entry {part.strip()!r} is not an integer") from None
    return validate_family(values)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="intersective", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_family(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("family", help="comma-separated a_1,...,a_n")
        p.add_argument("--json", action="store_true")
        return p

    with_family("check", "decide whether f has a root modulo every integer")
    p = with_family("root", "construct a root of f modulo M")
    p.add_argument("--modulus", type=_positive, required=True)
    p = with_family("counterexample", "list moduli at which f has no root")
    p.add_argument("--minimal", action="store_true", help="also scan for the least failing modulus")
    p.add_argument("--bound", type=_positive, default=1000)
    p = with_family("verify", "confirm the verdict by exhaustive scans")
    p.add_argument("--max-modulus", type=_positive, required=True)

    p = sub.add_parser("search", help="enumerate families from a pool of square-free values")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--pool-max", type=int, required=True)
    p.add_argument("--negatives", action="store_true")
    p.add_argument("--verdict", choices=["certificate", "counterexample", "all"], default="certificate")
    p.add_argument("--limit", type=_positive, default=100)
    p.add_argument("--json", action="store_true")

    for name, a, b in (("corollary1", "p", "q"), ("corollary2", "c", "d")):
        p = sub.add_parser(name, help=f"check the family ({a}, {b}, ...) both ways")
        p.add_argument(a, type=int)
        p.add_argument(b, type=int)
        p.add_argument("--json", action="store_true")
    return parser


def _describe_verdict(family: Family, verdict) -> list[str]:
    if isinstance(verdict, Certificate):
        wit = ", ".join(f"{p} -> a_{i}={family[i].value}" for p, i in sorted(verdict.odd_prime_witnesses.items()))
        k = verdict.dyadic_witness
        return [
            f"family {family}: roots modulo every positive integer",
            f"  odd square subset T = {list(verdict.subset)}",
            f"  residue witnesses: {wit or '(none needed)'}",
            f"  1 mod 8 member: a_{k} = {family[k].value}",
        ]
    lines = [f"family {family}: no root modulo some integer"]
    for i, ob in enumerate(verdict.obstructions):
        mark = " (primary)" if i == verdict.primary_index else ""
        lines.append(f"  {ob.kind} at {ob.modulus} = {ob.modulus.modulus}{mark}")
    if verdict.incomplete:
        lines.append("  note: all-nonresidue prime search hit its bound")
    return lines


def _cmd_check(args, settings, out):
    verdict = check_theorem1(args.family_obj, prime_bound=settings["prime_bound"],
                             subset_cap=settings["subset_cap"])
    code = EXIT_CERTIFICATE if isinstance(verdict, Certificate) else EXIT_COUNTEREXAMPLE
    return code, serialize.verdict_to_dict(verdict), _describe_verdict(args.family_obj, verdict)


def _cmd_root(args, settings, out):
    family = args.family_obj
    verdict = check_theorem1(family, prime_bound=settings["prime_bound"], subset_cap=settings["subset_cap"])
    if not isinstance(verdict, Certificate):
        result = {"certified": False, "verdict": serialize.verdict_to_dict(verdict)}
        return EXIT_COUNTEREXAMPLE, result, [f"family {family} is not certified; no root construction"]
    w = root_mod(family, verdict, args.modulus)
    lines = [f"x = {w.root} solves f(x) = 0 mod {w.modulus}"]
    lines += [f"  mod {c.prime}^{c.exponent}: x = {c.root}, x^2 = a_{c.index}" for c in w.components]
    return EXIT_CERTIFICATE, {"certified": True, "witness": serialize.root_witness_to_dict(w)}, lines


def _cmd_counterexample(args, settings, out):
    family = args.family_obj
    verdict = check_theorem1(family, prime_bound=settings["prime_bound"], subset_cap=settings["subset_cap"])
    result = {"verdict": serialize.verdict_to_dict(verdict)}
    lines = _describe_verdict(family, verdict)
    if args.minimal:
        m = minimal_failing_modulus(family, args.bound, settings["scan_budget"])
        result["minimal_failing_modulus"] = m
        lines.append(f"  least failing modulus <= {args.bound}: {m if m is not None else 'none'}")
    code = EXIT_CERTIFICATE if isinstance(verdict, Certificate) else EXIT_COUNTEREXAMPLE
    return code, result, lines


def _cmd_verify(args, settings, out):
    family = args.family_obj
    budget = settings["scan_budget"]
    verdict = check_theorem1(family, prime_bound=settings["prime_bound"], subset_cap=settings["subset_cap"])
    failing = minimal_failing_modulus(family, min(args.max_modulus, budget), budget)
    result = {"verdict": serialize.verdict_to_dict(verdict), "max_modulus": args.max_modulus,
              "minimal_failing_modulus": failing}
    if isinstance(verdict, Certificate):
        agree = failing is None
        reason = "roots found for every modulus scanned" if agree else f"no root modulo {failing}"
    else:
        check = verify_counterexample(family, verdict, budget=budget)
        agree = bool(check)
        reason = check.reason
    result["agrees"] = agree
    result["reason"] = reason
    lines = _describe_verdict(family, verdict)
    lines.append(f"oracle sweep up to {args.max_modulus}: {'agrees' if agree else 'DISAGREES'} ({reason})")
    if failing is not None:
        lines.append(f"  least failing modulus: {failing}")
    return (EXIT_CERTIFICATE if agree else EXIT_COUNTEREXAMPLE), result, lines


def _cmd_corollary(args, settings, out):
    kwargs = {"prime_bound": settings["prime_bound"], "subset_cap": settings["subset_cap"]}
    if args.command == "corollary1":
        report = corollary1_check(args.p, args.q, **kwargs)
    else:
        report = corollary2_check(args.c, args.d, **kwargs)
    lines = [f"corollary condition: {'holds' if report.corollary_condition else 'fails'}"]
    lines += [f"  {k}: {v}" for k, v in report.conditions.items()]
    lines += _describe_verdict(report.family, report.verdict)
    if report.discrepancy:
        lines.append("DISCREPANCY: corollary condition and engine verdict disagree (engine is authoritative)")
    code = EXIT_CERTIFICATE if isinstance(report.verdict, Certificate) else EXIT_COUNTEREXAMPLE
    return code, serialize.corollary_to_dict(report), lines


def _cmd_search(args, settings, out):
    query = SearchQuery(pool_bound=args.pool_max, n=args.n, allow_negative=args.negatives,
                        max_results=args.limit, require_verdict=args.verdict)
    for family, verdict in search_families(query, prime_bound=settings["prime_bound"],
                                           subset_cap=settings["subset_cap"]):
        if args.json:
            record = {"family": [serialize.json_int(v) for v in family.values]}
            record.update(serialize.verdict_to_dict(verdict))
            out.write(serialize.dumps(record) + "\n")
        else:
            kind = "certificate" if isinstance(verdict, Certificate) else "counterexample"
            extra = "" if kind == "certificate" else f" primary modulus {verdict.primary.modulus.modulus}"
            out.write(f"{family}: {kind}{extra}\n")
    return 0, None, None


COMMANDS = {
    "check": _cmd_check,
    "root": _cmd_root,
    "counterexample": _cmd_counterexample,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "corollary1": _cmd_corollary,
    "corollary2": _cmd_corollary,
}


def _echo(args, settings) -> dict:
    echo = {}
    for key, value in vars(args).items():
        if key in ("family_obj", "json", "command"):
            continue
        if key == "family":
            value = [serialize.json_int(v) for v in args.family_obj.values]
        echo[key] = value
    echo["settings"] = settings
    return echo


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    # a family such as -7,11,19 would otherwise be read as an option
    argv = [" " + a if _NEGATIVE_FAMILY.match(a) else a for a in argv]
    started = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        settings = _settings()
        if hasattr(args, "family"):
            args.family_obj = _family(args.family)
        code, result, lines = COMMANDS[args.command](args, settings, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Inconclusive as exc:
        err.write(f"inconclusive: {exc}\n")
        return EXIT_INCONCLUSIVE
    except IntersectiveError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    if result is None:
        return code
    if args.json:
        envelope = {
            "schema_version": serialize.SCHEMA_VERSION,
            "command": args.command,
            "input_echo": _echo(args, settings),
            "result": result,
            "timing_ms": int((time.perf_counter() - started) * 1000),
        }
        out.write(serialize.dumps(envelope) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())
