"""JSON forms of verdicts and witnesses.

Field order is fixed by construction. Integers beyond 2^53 are written as
decimal strings so floating-point JSON readers cannot corrupt them.
"""

from __future__ import annotations

import json
from typing import Any

from .certify import (
    OBSTRUCTION_K,
    Certificate,
    CorollaryReport,
    Counterexample,
    FactorEvidence,
    Obstruction,
    Verdict,
)
from .lifting import RootWitness
from .ntheory import PrimePower
from .oracle import ScanReport

SCHEMA_VERSION = "1"
_SAFE = 2**53


def json_int(x: int) -> int | str:
    return x if -_SAFE <= x <= _SAFE else str(x)


def parse_int(v: int | str) -> int:
    if isinstance(v, bool):
        raise TypeError("booleans are not integers here")
    return int(v)


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def _evidence(e: FactorEvidence) -> dict:
    out = {"index": e.index, "value": json_int(e.value), "rule": e.rule}
    if e.symbol is not None:
        out["legendre"] = e.symbol
    if e.residue is not None:
        out["mod8"] = e.residue
    return out


def verdict_to_dict(verdict: Verdict) -> dict:
    if isinstance(verdict, Certificate):
        return {
            "verdict": "certificate",
            "subset": list(verdict.subset),
            "odd_prime_witnesses": {str(p): i for p, i in sorted(verdict.odd_prime_witnesses.items())},
            "dyadic_witness": verdict.dyadic_witness,
        }
    obstructions = [
        {
            "kind": ob.kind,
            "prime": ob.modulus.prime,
            "k": OBSTRUCTION_K[ob.kind],
            "exponent": ob.modulus.exponent,
            "modulus": json_int(ob.modulus.modulus),
            "evidence": [_evidence(e) for e in ob.evidence],
        }
        for ob in verdict.obstructions
    ]
    return {
        "verdict": "counterexample",
        "obstructions": obstructions,
        "primary": {
            "index": verdict.primary_index + 1,
            "modulus": json_int(verdict.primary.modulus.modulus),
        },
        "incomplete": verdict.incomplete,
    }


def verdict_from_dict(d: dict) -> Verdict:
    if d["verdict"] == "certificate":
        return Certificate(
            tuple(parse_int(i) for i in d["subset"]),
            {parse_int(p): parse_int(i) for p, i in d["odd_prime_witnesses"].items()},
            parse_int(d["dyadic_witness"]),
        )
    if d["verdict"] != "counterexample":
        raise ValueError(f"unknown verdict {d['verdict']!r}")
    obstructions = []
    for ob in d["obstructions"]:
        evidence = tuple(
            FactorEvidence(parse_int(e["index"]), parse_int(e["value"]), e["rule"],
                           e.get("legendre"), e.get("mod8"))
            for e in ob["evidence"]
        )
        pp = PrimePower(parse_int(ob["prime"]), parse_int(ob["exponent"]))
        if pp.modulus != parse_int(ob["modulus"]):
            raise ValueError(f"modulus {ob['modulus']} disagrees with {pp}")
        obstructions.append(Obstruction(ob["kind"], pp, evidence))
    return Counterexample(tuple(obstructions), bool(d.get("incomplete", False)))


def root_witness_to_dict(w: RootWitness) -> dict:
    return {
        "root": json_int(w.root),
        "modulus": json_int(w.modulus),
        "components": [
            {"prime": c.prime, "exponent": c.exponent, "modulus": json_int(c.modulus),
             "index": c.index, "root": json_int(c.root)}
            for c in w.components
        ],
    }


def scan_to_dict(r: ScanReport) -> dict:
    return {
        "modulus": json_int(r.modulus),
        "solvable": r.solvable,
        "witness": r.witness,
        "residues_checked": r.residues_checked,
    }


def corollary_to_dict(r: CorollaryReport) -> dict:
    return {
        "family": [json_int(v) for v in r.family.values],
        "corollary_condition": r.corollary_condition,
        "conditions": dict(r.conditions),
        "engine": verdict_to_dict(r.verdict),
        "discrepancy": r.discrepancy,
    }
