"""CSV report rows.

Procedure reports: ``procedure, params_hash, steps_completed, verdict, witness``.
Star-check reports: ``check, universe, params, verdict, witness, enumerated, seed``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from fractions import Fraction

PROCEDURE_FIELDS = ("procedure", "params_hash", "steps_completed", "verdict", "witness")
STAR_FIELDS = ("check", "universe", "params", "verdict", "witness", "enumerated", "seed")


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def canonical_params(params: dict) -> str:
    return json.dumps(_jsonable(params), sort_keys=True, separators=(",", ":"))


def params_hash(params: dict) -> str:
    return hashlib.sha256(canonical_params(params).encode()).hexdigest()[:16]


def format_seq(p) -> str:
    """P sequences and witnesses are comma-separated integers."""
    return ",".join(str(int(x)) for x in p) if p is not None else ""


def procedure_row(procedure: str, params: dict, steps: int, verdict: str, witness) -> dict:
    return {
        "procedure": procedure,
        "params_hash": params_hash(params),
        "steps_completed": steps,
        "verdict": verdict,
        "witness": witness if isinstance(witness, str) else format_seq(witness),
    }


def star_row(report) -> dict:
    lo, hi = report.universe
    return {
        "check": report.check,
        "universe": f"{lo}:{hi}",
        "params": canonical_params({"r_or_d": report.r_or_d, **report.params}),
        "verdict": report.label,
        "witness": format_seq(report.witness),
        "enumerated": report.enumerated,
        "seed": "" if report.seed is None else report.seed,
    }


def to_csv(rows, fields) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_csv(path, rows, fields) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(to_csv(rows, fields))
