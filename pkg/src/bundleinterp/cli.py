"""Command-line front door.

Exit codes: 0 affirmative, 1 negative, 2 usage or parse error, 3 internal
inconsistency between two derivations of the same value.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .classify import (
    Region,
    elliptic_normal,
    elliptic_weak,
    genus2_quintic_audit,
    rows_to_csv,
    rows_to_json,
    scan,
)
from .degeneration import elliptic_pipeline
from .fields import QQ, Field, PrimeField
from .oracle import DEFAULT_PRIME, decide_interpolation_oracle
from .p1bundles import (
    InterpolationKind,
    SplittingType,
    classify,
    explain_interpolation,
    general_modification_seq,
    h0,
    section_threshold,
    standard_lambda,
)
from .surfaces import (
    HirzebruchState,
    InconsistencyError,
    PicardClass,
    PointKind,
    intersect,
    modify,
    modify_general_sequence,
    on_k1_curve,
    p3_secant_splitting,
    secant_pullback,
    simulate_general_sequence,
)
from .tableaux import Partition, admissible, dominates, format_partition, parse_int_list, parse_partition

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3
PRIME_ENV = "BUNDLEINTERP_PRIME"
DEFAULT_TRIALS = 8
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int
    field: Field
    trials: int
    output: str

    def header(self) -> str:
        return f"# bundleinterp {__version__} seed={self.seed} field={self.field.name} trials={self.trials}"

    def to_dict(self) -> dict:
        return {"seed": self.seed, "field": self.field.name, "trials": self.trials}


def parse_field(text: str | None) -> Field:
    if text is None:
        text = os.environ.get(PRIME_ENV, str(DEFAULT_PRIME))
    if text.strip().lower() in ("rational", "q", "qq"):
        return QQ
    try:
        return PrimeField(int(text))
    except ValueError as exc:
        raise UsageError(f"bad prime {text!r}: {exc}") from None


def parse_range(text: str) -> list[int]:
    """``"7..20"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def make_config(args) -> RunConfig:
    seed = getattr(args, "seed", DEFAULT_SEED)
    if not -(2**63) <= seed < 2**64:
        raise UsageError("seed must fit in 64 bits")
    trials = getattr(args, "trials", DEFAULT_TRIALS)
    if trials < 1:
        raise UsageError("trials must be positive")
    return RunConfig(seed, parse_field(getattr(args, "prime", None)), trials, getattr(args, "format", "text"))


def _bundle(text: str) -> SplittingType:
    try:
        return SplittingType.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad splitting type {text!r}: {exc}") from None


def _partition(text: str) -> Partition:
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _emit(cfg: RunConfig, payload: dict, lines: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps({"config": cfg.to_dict(), **payload}, indent=2))
    else:
        print(cfg.header())
        for line in lines:
            print(line)


def _code(value: bool) -> int:
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_decide(args) -> int:
    cfg = make_config(args)
    E = _bundle(args.bundle)
    if (args.lam is None) == (args.kind is None):
        raise UsageError("give exactly one of --lambda or --kind")
    if args.lam is not None:
        lams = [_partition(args.lam)]
    else:
        try:
            lams = standard_lambda(E, InterpolationKind.parse(args.kind))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    threshold = section_threshold(E)
    value = True
    results = []
    for lam in lams:
        if not admissible(lam, E.rank, h0(E)):
            raise UsageError(f"lambda {format_partition(lam)} is not admissible for {E}")
        v = explain_interpolation(E, lam)
        results.append((lam, v))
        if not v:
            value = False
            break
    lines = [f"bundle {E}  h0={h0(E)}  threshold (1+a)^T = ({format_partition(threshold)})"]
    for lam, v in results:
        rel = "<=" if dominates(lam, threshold) else "not <="
        lines.append(f"lambda ({format_partition(lam)}) {rel} ({format_partition(threshold)}): {str(v.value).lower()}")
        lines.extend(f"caveat: {c}" for c in v.caveats)
    if len(lams) > 1:
        lines.append(f"checked {len(results)} of {len(lams)} lambdas")
    lines.append(str(value).lower())
    payload = {
        "schema": "v1",
        "bundle": list(E),
        "threshold": list(threshold),
        "value": value,
        "verdicts": [{"lambda": list(lam), **v.to_dict()} for lam, v in results],
    }
    _emit(cfg, payload, lines)
    return _code(value)


def cmd_oracle(args) -> int:
    cfg = make_config(args)
    E = _bundle(args.bundle)
    lam = _partition(args.lam)
    if not admissible(lam, E.rank, h0(E)):
        raise UsageError(f"lambda {format_partition(lam)} is not admissible for {E}")
    res = decide_interpolation_oracle(E, lam, trials=cfg.trials, rng_seed=cfg.seed, field=cfg.field)
    combinatorial = explain_interpolation(E, lam).value
    lines = [f"bundle {E}  lambda ({format_partition(lam)})  trials_run={res.trials_run}  best_drop={res.h0_drop}"]
    if res.witness is not None:
        lines.append("witness " + json.dumps(res.witness_json(), sort_keys=True))
    lines.extend(f"caveat: {c}" for c in res.caveats)
    lines.append(f"combinatorial cross-check: {str(combinatorial).lower()}"
                 + ("" if combinatorial == res.value else " (disagrees; raise --trials)"))
    lines.append(str(res.value).lower())
    _emit(cfg, {**res.to_dict(), "combinatorial": combinatorial}, lines)
    return _code(res.value)


REGIONS = {"elliptic": Region.ELLIPTIC, "space": Region.SPACE, "hilbert": Region.HILBERT}


def _scan_rows(args):
    which = REGIONS[args.which]
    d_range = parse_range(args.d)
    if which is Region.ELLIPTIC:
        if args.n is None:
            raise UsageError("elliptic scan needs --n")
        second = parse_range(args.n)
    else:
        if args.g is None:
            raise UsageError(f"{args.which} scan needs --g")
        second = parse_range(args.g)
    n = 3
    if which is Region.HILBERT and args.n is not None:
        n = parse_range(args.n)[0]
    try:
        return which, scan(which, d_range, second, n=n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_scan(args) -> int:
    which, rows = _scan_rows(args)
    from .plotting import region_svg, save_region_plot

    if args.format == "csv":
        text = rows_to_csv(rows)
    elif args.format == "json":
        text = rows_to_json(rows, which) + "\n"
    elif args.format == "svg":
        text = region_svg(rows, which)
    else:
        width = max(len(r.status) for r in rows)
        text = "".join(f"{r.d:>4} {r.g_or_n:>4}  {r.status:<{width}}  {r.citation}\n" for r in rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.figure:
        save_region_plot(rows, which, args.figure)
    return EXIT_TRUE


def cmd_report(args) -> int:
    """Regenerate every region table as CSV plus matching figures in one directory."""
    from .plotting import save_region_plot

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    specs = [
        (Region.ELLIPTIC, range(7, 21), range(5, 13), 3),
        (Region.SPACE, range(3, 13), range(0, 9), 3),
        (Region.HILBERT, range(3, 21), range(0, 11), 3),
    ]
    for which, ds, ss, n in specs:
        rows = scan(which, ds, ss, n=n)
        (out / f"{which.value}.csv").write_text(rows_to_csv(rows))
        for suffix in args.formats.split(","):
            save_region_plot(rows, which, out / f"{which.value}.{suffix.strip()}")
    (out / "quintic_audit.json").write_text(json.dumps(genus2_quintic_audit(), indent=2) + "\n")
    for p in sorted(out.iterdir()):
        print(p)
    return EXIT_TRUE


def _trace_line(step: int, state: HirzebruchState, reason: str) -> str:
    return json.dumps({"step": step, "surface": str(state), "reason": reason})


def cmd_surface(args) -> int:
    sub = args.surface_cmd
    if sub == "fn":
        states = simulate_general_sequence(args.n, args.k)
        closed = modify_general_sequence(args.n, args.k)
        for i, s in enumerate(states):
            print(_trace_line(i, s, "start" if i == 0 else "general point"))
        if states[-1] != closed:
            print(f"simulation {states[-1]} disagrees with closed form {closed}", file=sys.stderr)
            return EXIT_INCONSISTENT
        print(closed)
        return EXIT_TRUE
    if sub == "modify":
        state = HirzebruchState(args.n)
        print(_trace_line(0, state, "start"))
        try:
            kinds = [PointKind(k.strip()) for k in args.kinds.split(",") if k.strip()]
            for i, kind in enumerate(kinds, 1):
                state = modify(state, kind)
                print(_trace_line(i, state, kind.value))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(state)
        return EXIT_TRUE
    if sub == "p3secants":
        if args.d < 3 or args.k < 0:
            raise UsageError("need d >= 3 and k >= 0")
        try:
            res = p3_secant_splitting(args.d, args.k, seed=args.seed)
        except InconsistencyError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_INCONSISTENT
        for rec in res.trace:
            print(rec.to_json())
        print(res.splitting)
        return EXIT_TRUE
    if sub == "k1":
        try:
            pts = [tuple(parse_int_list(p)) for p in args.points]
            if any(len(p) != 2 for p in pts):
                raise ValueError("points are x,y pairs")
            if len(pts) != 2 * args.k + 2:
                raise ValueError(f"need {2 * args.k + 2} points for k={args.k}")
            value = on_k1_curve(pts)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(json.dumps({"points": [list(p) for p in pts], "k": args.k, "on_curve": value}))
        print(str(value).lower())
        return _code(value)
    if sub == "pullback":
        if args.d < 3:
            raise UsageError("need d >= 3")
        A = secant_pullback(args.d, args.i, args.j, swapped=args.swapped)
        sq = intersect(A, A)
        print(json.dumps({"class": _class_dict(A), "self_intersection": sq}))
        print(sq)
        return EXIT_TRUE
    raise UsageError(f"unknown surface command {sub!r}")


def _class_dict(A: PicardClass) -> dict:
    return {"c1": A.c1, "c2": A.c2, "mults": list(A.mults)}


def cmd_elliptic(args) -> int:
    cfg = make_config(args)
    if args.normal:
        if args.d < 3:
            raise UsageError("need d >= 3")
        weak, tail = elliptic_normal(args.d)
        lines = [f"elliptic normal curve of degree {args.d}: weak={str(weak).lower()} tail=({format_partition(tail)})",
                 str(weak).lower()]
        _emit(cfg, {"schema": "v1", "d": args.d, "weak": weak, "tail": list(tail)}, lines)
        return _code(weak)
    if args.n is None or args.n < 3:
        raise UsageError("need --n >= 3")
    closed = elliptic_weak(args.d, args.n)
    try:
        v = elliptic_pipeline(args.d, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"d={args.d} n={args.n} closed-form={str(closed).lower()} pipeline={str(v.value).lower()}"]
    lines.extend(f"step: {s.rule}" for s in v.chain)
    lines.extend(f"caveat: {c}" for c in v.caveats)
    lines.append(str(v.value).lower())
    _emit(cfg, {"closed_form": closed, **v.to_dict()}, lines)
    if closed != v.value:
        print("pipeline disagrees with closed form", file=sys.stderr)
        return EXIT_INCONSISTENT
    return _code(v.value)


def cmd_quintic(args) -> int:
    print(json.dumps(genus2_quintic_audit(), indent=2))
    return EXIT_TRUE


def cmd_classify(args) -> int:
    cfg = make_config(args)
    E = _bundle(args.bundle)
    c = classify(E)
    lines = [f"bundle {E}: weak={str(c.weak).lower()} regular={str(c.regular).lower()} strong={str(c.strong).lower()}"]
    _emit(cfg, {"schema": "v1", "bundle": list(E), **c._asdict()}, lines)
    return _code(c.regular)


def cmd_modify(args) -> int:
    cfg = make_config(args)
    E = _bundle(args.bundle)
    lam = _partition(args.lam)
    if not admissible(lam, E.rank, h0(E)):
        raise UsageError(f"lambda {format_partition(lam)} is not admissible for {E}")
    F = general_modification_seq(E, lam)
    _emit(cfg, {"schema": "v1", "bundle": list(E), "lambda": list(lam), "result": list(F)}, [str(F)])
    return EXIT_TRUE


def _add_config(p: argparse.ArgumentParser, oracle: bool = False) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--prime", default=None, help=f"prime modulus or 'rational' (default ${PRIME_ENV} or {DEFAULT_PRIME})")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bundleinterp", description="Interpolation for vector bundles on P^1.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("decide", help="combinatorial decider")
    p.add_argument("--bundle", required=True)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--kind", help="weak, regular, strong, tail:2,2 or custom:3,1")
    _add_config(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", help="randomized linear-algebra oracle")
    p.add_argument("--bundle", default="1,1")
    p.add_argument("--lambda", dest="lam", default="2,2")
    _add_config(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("classify", help="weak/regular/strong for a splitting type")
    p.add_argument("--bundle", required=True)
    _add_config(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("modify", help="splitting type after general modifications")
    p.add_argument("--bundle", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    _add_config(p)
    p.set_defaults(func=cmd_modify)

    p = sub.add_parser("scan", help="region tables")
    p.add_argument("which", choices=sorted(REGIONS))
    p.add_argument("--d", required=True)
    p.add_argument("--n")
    p.add_argument("--g")
    p.add_argument("--format", choices=("text", "csv", "json", "svg"), default="text")
    p.add_argument("--output")
    p.add_argument("--figure", help="also render the region grid to this file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("report", help="write all region CSVs and figures to a directory")
    p.add_argument("--outdir", required=True)
    p.add_argument("--formats", default="svg,png")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("surface", help="Hirzebruch surface simulation")
    ss = p.add_subparsers(dest="surface_cmd", required=True)
    q = ss.add_parser("fn")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q = ss.add_parser("modify")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--kinds", required=True, help="comma list of general / on_neg_section")
    q = ss.add_parser("p3secants")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q = ss.add_parser("k1")
    q.add_argument("--points", nargs="+", required=True)
    q.add_argument("--k", type=int, required=True)
    q = ss.add_parser("pullback")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--i", type=int, default=0)
    q.add_argument("--j", type=int, default=1)
    q.add_argument("--swapped", action="store_true")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("elliptic", help="elliptic curve interpolation")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--normal", action="store_true", help="elliptic normal curve of degree d")
    _add_config(p)
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("quintic", help="genus-2 quintic section-count audit")
    p.set_defaults(func=cmd_quintic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
