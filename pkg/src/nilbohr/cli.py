"""Command-line laboratory.

Each subcommand builds an :class:`ExperimentConfig` and hands it to :func:`run`.
Exit status: 0 on success or "holds", 2 on a mathematically negative outcome
(refuted, stuck, not found, nonempty intersection), 1 on usage or tool errors.

All randomness comes from ``--seed`` through numpy's PCG64 generator.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import checkers, constructions, dynamics, reports, setcore, setio
from .errors import NilBohrError, NotFound, ParseError, Stuck

COMMANDS = ("gen-bohr", "gen-poly", "gen-shd", "avoid", "counterexample",
            "check-star", "witness-pw", "density")

OK, ERROR, NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")


# parameter parsing ---------------------------------------------------------


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"expected a window lo:hi, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"window {text!r} is inverted")
    return lo, hi


def parse_intervals(text: str) -> setcore.IntervalFamily:
    try:
        return setcore.IntervalFamily(tuple(parse_window(t) for t in text.split(",")))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a rational like 1/4, got {text!r}") from None


def parse_angles(text: str) -> tuple[Fraction, ...]:
    return tuple(dynamics.parse_angle(t) for t in text.split(","))


def _require(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _emit_set(s: setcore.WindowedSet, out: str | None) -> None:
    if out:
        setio.serialize_set_file(s, out)
    else:
        sys.stdout.write(setio.dumps(s))


def _emit_csv(rows, fields, out: str | None) -> None:
    if out:
        reports.write_csv(out, rows, fields)


# commands ------------------------------------------------------------------


def _gen_bohr(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "alpha", "radius", "window")
    angles = parse_angles(p["alpha"])
    radii = tuple(parse_fraction(r) for r in p["radius"].split(","))
    if len(radii) == 1:
        radii *= len(angles)
    centers = parse_angles(p["center"]) if p.get("center") else (Fraction(0),) * len(angles)
    target = dynamics.BohrTarget(angles, centers, radii)
    s = dynamics.bohr_set(target, parse_window(p["window"]))
    _emit_set(s, cfg.out)
    print(f"gen-bohr: {len(s)} members on [{s.lo}, {s.hi})", file=sys.stderr)
    return OK


def _gen_poly(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "alpha", "radius", "window")
    poly = parse_ints(p.get("poly") or "1,0,0")
    if len(poly) != 3:
        raise UsageError("--poly takes three coefficients c2,c1,c0")
    target = dynamics.PolyTarget(dynamics.parse_angle(p["alpha"]), poly, parse_fraction(p["radius"]))
    s = dynamics.poly_return_set(target, parse_window(p["window"]))
    _emit_set(s, cfg.out)
    print(f"gen-poly: {len(s)} members on [{s.lo}, {s.hi})", file=sys.stderr)
    return OK


def _gen_shd(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "p", "d", "cap")
    spec = setcore.GapSumSpec(parse_ints(p["p"]), int(p["d"]))
    s = setcore.sh_d(spec, int(p["cap"]))
    _emit_set(s, cfg.out)
    print(f"gen-shd: {len(s)} sums <= {p['cap']}", file=sys.stderr)
    return OK


def _avoid(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "b_file", "d", "steps")
    b = setio.parse_set_file(p["b_file"])
    d, steps = int(p["d"]), int(p["steps"])
    policy = constructions.ChoicePolicy(p.get("policy") or "smallest",
                                        int(p.get("threshold") or 0), cfg.seed)
    hashed = {"b": setio.dumps(b), "d": d, "steps": steps, "policy": policy.kind,
              "threshold": policy.threshold, "seed": cfg.seed}
    try:
        rep = constructions.avoider_run(b, d, steps, policy)
    except Stuck as exc:
        _emit_csv([reports.procedure_row("avoid", hashed, len(exc.p), f"STUCK@{exc.step}", exc.p)],
                  reports.PROCEDURE_FIELDS, cfg.out)
        print(f"avoid: STUCK at step {exc.step}; P={reports.format_seq(exc.p)}")
        return NEGATIVE
    _emit_csv([reports.procedure_row("avoid", hashed, len(rep.p), rep.verdict, rep.p)],
              reports.PROCEDURE_FIELDS, cfg.out)
    print(f"avoid: P={reports.format_seq(rep.p)} {rep.verdict} ({rep.verified_by}, {rep.sums_checked} sums)")
    return OK


def _counterexample(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "alpha", "epsilon", "count", "bound")
    spec = constructions.CounterexampleSpec(
        dynamics.parse_angle(p["alpha"]), parse_fraction(p["epsilon"]),
        int(p["count"]), int(p["bound"]), parse_fraction(p.get("target") or "1/3"))
    radius = parse_fraction(p.get("radius") or "1/10")
    hashed = {"alpha": spec.alpha, "epsilon": spec.epsilon, "count": spec.target_count,
              "bound": spec.search_bound, "target": spec.target, "radius": radius}
    try:
        s = constructions.counterexample_search(spec)
    except NotFound as exc:
        _emit_csv([reports.procedure_row("counterexample", hashed, 0, "NOTFOUND", str(exc))],
                  reports.PROCEDURE_FIELDS, cfg.out)
        print(f"counterexample: NOTFOUND ({exc})")
        return NEGATIVE
    if p.get("set_out"):
        setio.serialize_set_file(s, p["set_out"])
    omega = dynamics.PolyTarget(spec.alpha, (1, 0, 0), radius)
    rep = constructions.counterexample_verify(s, omega)
    verdict = "EMPTY" if rep.empty else "HIT"
    witness = rep.s if rep.empty else rep.witness
    _emit_csv([reports.procedure_row("counterexample", hashed, len(rep.s), verdict, witness)],
              reports.PROCEDURE_FIELDS, cfg.out)
    print(f"counterexample: S={reports.format_seq(rep.s)} Δ(S)∩Ω {verdict}")
    return OK if rep.empty else NEGATIVE


def _check_star(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "kind", "a_file")
    a = setio.parse_set_file(p["a_file"])
    kind = p["kind"]
    if kind == "sumset":
        _require(p, "r", "m")
        rep = checkers.check_sumset_star(a, int(p["r"]), int(p["m"]))
    elif kind == "delta":
        _require(p, "r", "m")
        rep = checkers.check_delta_star(a, int(p["r"]), int(p["m"]))
    elif kind == "shd":
        _require(p, "d", "len", "trials")
        rep = checkers.check_shd_star_sampled(a, int(p["d"]), int(p["len"]),
                                              int(p["trials"]), cfg.seed)
    else:
        raise UsageError(f"--kind must be sumset, delta or shd, got {kind!r}")
    _emit_csv([reports.star_row(rep)], reports.STAR_FIELDS, cfg.out)
    wit = f" witness={reports.format_seq(rep.witness)}" if rep.witness else ""
    print(f"check-star {kind}: {rep.label} after {rep.enumerated} candidates{wit}")
    return OK if rep.holds else NEGATIVE


def _witness_pw(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "a_file", "lambda_file", "intervals")
    a = setio.parse_set_file(p["a_file"])
    lam = setio.parse_set_file(p["lambda_file"])
    fam = parse_intervals(p["intervals"])
    min_len = int(p.get("min_len") or 1)
    hashed = {"a": setio.dumps(a), "lambda": setio.dumps(lam),
              "intervals": list(fam.intervals), "min_len": min_len}
    try:
        w = constructions.pw_witness(a, lam, fam, min_len, lambda_id=Path(p["lambda_file"]).name)
    except NotFound as exc:
        _emit_csv([reports.procedure_row("witness-pw", hashed, 0, "NOTFOUND", "")],
                  reports.PROCEDURE_FIELDS, cfg.out)
        print(f"witness-pw: NOTFOUND ({exc})")
        return NEGATIVE
    text = ";".join(f"{x}:{y}@J{k}" for x, y, k in w.picked)
    _emit_csv([reports.procedure_row("witness-pw", hashed, len(w.picked), "FOUND", text)],
              reports.PROCEDURE_FIELDS, cfg.out)
    print(f"witness-pw: {len(w.picked)} intervals, lengths {w.lengths()}")
    return OK


def _density(cfg: ExperimentConfig) -> int:
    p = cfg.params
    _require(p, "set_file")
    s = setio.parse_set_file(p["set_file"])
    fam = parse_intervals(p["intervals"]) if p.get("intervals") else setcore.IntervalFamily(((s.lo, s.hi),))
    rows = []
    for lo, hi in fam:
        part = s.restrict(lo, hi)
        gap = setcore.max_gap(s, lo, hi)
        rows.append({"interval": f"{lo}:{hi}", "members": len(part), "length": hi - lo,
                     "density": str(Fraction(len(part), hi - lo)),
                     "max_gap": "inf" if gap == float("inf") else gap})
    best = setcore.upper_density(s, fam)
    _emit_csv(rows, ("interval", "members", "length", "density", "max_gap"), cfg.out)
    print(f"density: max over {len(fam)} intervals = {best}")
    return OK


HANDLERS = {
    "gen-bohr": _gen_bohr, "gen-poly": _gen_poly, "gen-shd": _gen_shd, "avoid": _avoid,
    "counterexample": _counterexample, "check-star": _check_star,
    "witness-pw": _witness_pw, "density": _density,
}


def run(config: ExperimentConfig) -> int:
    """Execute one experiment; returns the process exit status."""
    try:
        return HANDLERS[config.command](config)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except (NilBohrError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR


# argparse front end --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilbohr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *opts):
        sp = sub.add_parser(name, help=help_)
        for opt in opts:
            sp.add_argument(opt)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="output file (set file or CSV report)")
        return sp

    add("gen-bohr", "Bohr return set of a torus rotation", "--alpha", "--radius", "--center", "--window")
    add("gen-poly", "quadratic return set {n : ||q(n) alpha|| < r}", "--alpha", "--poly", "--radius", "--window")
    add("gen-shd", "gap-constrained sums SH_d(P) up to a cap", "--p", "--d", "--cap")
    add("avoid", "greedy SH_d-avoider inside a set B", "--b-file", "--d", "--steps", "--policy", "--threshold")
    add("counterexample", "search S with Δ(S) missing the quadratic return set",
        "--alpha", "--epsilon", "--count", "--bound", "--radius", "--target", "--set-out")
    add("check-star", "finite star-class checks", "--kind", "--a-file", "--r", "--m", "--d", "--len", "--trials")
    add("witness-pw", "strongly-piecewise witness intervals", "--a-file", "--lambda-file", "--intervals", "--min-len")
    add("density", "interval densities and gaps", "--set-file", "--intervals")
    return parser


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    command, seed, out = args.pop("command"), args.pop("seed"), args.pop("out")
    try:
        cfg = ExperimentConfig(command, args, seed, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
