"""Command-line surface: aggregate, check, table, filter.

Exit codes: 0 success / no violation found, 1 property violated (witness
printed), 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import location, means, pgm, tonal
from .means import Interval
from .properties import CHECKS, Aggregator, SamplerConfig, lehmer_bound_table

NONNEG = Interval(0.0, math.inf)
REALS = Interval(-math.inf, math.inf)


def _parse_weights(spec: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in spec.split(",")])
    except ValueError as exc:
        raise ValueError(f"bad weight list {spec!r}") from exc


def build_aggregator(name: str, args) -> Aggregator:
    """Resolve a mean/estimator name plus its CLI parameters to a handle."""
    w = _parse_weights(args.weights) if getattr(args, "weights", None) else None
    simple = {
        "mean": (means.arithmetic_mean, REALS, {"monotone", "shift-invariant"}),
        "arithmetic": (means.arithmetic_mean, REALS, {"monotone", "shift-invariant"}),
        "median": (means.median, REALS, {"monotone", "shift-invariant"}),
        "midrange": (means.midrange, REALS, {"monotone", "shift-invariant"}),
        "mode": (location.mode, REALS, {"shift-invariant"}),
        "shorth": (location.shorth, REALS, {"shift-invariant"}),
        "lms": (location.lms, REALS, {"shift-invariant"}),
        "lts": (location.lts, REALS, {"shift-invariant"}),
        "density": (location.density_mean, REALS, {"shift-invariant"}),
    }
    if name in simple:
        fn, domain, known = simple[name]
        return Aggregator(fn=fn, domain=domain, known=frozenset(known), name=name)
    if name == "lehmer":
        q = _require_param(args, "q")
        return Aggregator(
            fn=lambda x: means.lehmer_mean(x, q), domain=NONNEG, name=f"lehmer(q={q:g})"
        )
    if name == "gini":
        p, q = _require_param(args, "p"), _require_param(args, "q")
        return Aggregator(
            fn=lambda x: means.gini_mean(x, p, q, w),
            domain=NONNEG,
            name=f"gini(p={p:g},q={q:g})",
        )
    if name == "power":
        p = _require_param(args, "p")
        return Aggregator(
            fn=lambda x: means.power_mean(x, p, w),
            domain=NONNEG,
            known=frozenset({"monotone"}),
            name=f"power(p={p:g})",
        )
    if name == "owa":
        if w is None:
            raise ValueError("owa requires --weights")
        return Aggregator(
            fn=lambda x: means.owa(x, w),
            domain=REALS,
            arity=w.size,
            known=frozenset({"monotone", "shift-invariant"}),
            name="owa",
        )
    if name == "owa-penalty":
        if w is None:
            raise ValueError("owa-penalty requires --weights")
        return Aggregator(
            fn=lambda x: location.owa_penalty_estimator(x, w),
            domain=REALS,
            arity=w.size,
            known=frozenset({"shift-invariant"}),
            name="owa-penalty",
        )
    raise ValueError(f"unknown mean {name!r}")


def _require_param(args, attr: str) -> float:
    value = getattr(args, attr, None)
    if value is None:
        raise ValueError(f"this mean requires --{attr}")
    return float(value)


def _read_values(args) -> np.ndarray:
    if args.file:
        text = Path(args.file).read_text().split()
        values = [float(v) for v in text]
    else:
        values = [float(v) for v in args.values]
    if not values:
        raise ValueError("no input values given (inline or --file)")
    return np.array(values)


def cmd_aggregate(args) -> int:
    agg = build_aggregator(args.name, args)
    x = _read_values(args)
    print(f"{agg(x):.12g}")
    return 0


def cmd_check(args) -> int:
    if args.property not in CHECKS:
        raise ValueError(f"unknown property {args.property!r}; choose from {sorted(CHECKS)}")
    agg = build_aggregator(args.name, args)
    cfg = SamplerConfig(
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        shift_max=args.shift_max,
    )
    report = CHECKS[args.property](agg, n=args.n, cfg=cfg)
    print(report.to_json() if args.format == "machine" else report.to_text())
    return 1 if report.violated else 0


def cmd_table(args) -> int:
    q_values = [float(v) for v in args.q_list.split(",")]
    rows = lehmer_bound_table(
        q_values, args.n_max, SamplerConfig(samples=args.samples, seed=args.seed)
    )
    header = f"{'q':>8} {'n':>4} {'bound':>10}  {'theory':<36} {'empirical':<20}"
    print(header)
    print("-" * len(header))
    for row in rows:
        bound = "-" if row["bound"] is None else f"{row['bound']:.4g}"
        print(
            f"{row['q']:>8.3g} {row['n']:>4d} {bound:>10}  "
            f"{row['theory']:<36} {row['empirical']:<20}"
        )
    return 0


def cmd_filter(args) -> int:
    data = Path(args.infile).read_bytes()
    img = pgm.read_pgm(data)
    cfg = tonal.FilterConfig(
        radius=args.radius,
        spatial_sigma=args.spatial_sigma,
        tonal_kernel=args.tonal_kernel,
        tonal_sigma=args.tonal_sigma,
        estimator=args.estimator,
        dissimilarity=args.dissimilarity,
        huber_delta=args.huber_delta,
        boundary=args.boundary,
        mode_quantize=1.0 / img.maxval,
    )
    out = tonal.filter_image(img, cfg)
    Path(args.outfile).write_bytes(pgm.write_pgm(out))
    print(
        f"filtered {img.width}x{img.height} (maxval {img.maxval}): "
        f"radius={cfg.radius} spatial_sigma={cfg.spatial_sigma:g} "
        f"tonal={cfg.tonal_kernel}({cfg.tonal_sigma:g}) estimator={cfg.estimator} "
        f"dissimilarity={cfg.dissimilarity} boundary={cfg.boundary}"
    )
    return 0


def _add_mean_params(p: argparse.ArgumentParser):
    p.add_argument("--q", type=float, default=None, help="Lehmer/Gini exponent")
    p.add_argument("--p", type=float, default=None, help="power/Gini exponent")
    p.add_argument("--weights", default=None, help="comma-separated weights")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakmeans",
        description="Weakly monotone averaging functions and their verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("aggregate", help="evaluate a mean on values")
    p.add_argument("name")
    _add_mean_params(p)
    p.add_argument("--file", default=None, help="file with one value per line")
    p.add_argument("values", nargs="*", help="input values (after --)")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("check", help="falsify or fail to falsify a property")
    p.add_argument("property", help="|".join(sorted(CHECKS)))
    p.add_argument("name")
    _add_mean_params(p)
    p.add_argument("--n", type=int, default=None, help="argument count")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--shift-max", type=float, default=0.5)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", help="Lehmer weak-monotonicity bound table")
    p.add_argument("--q-list", default="1,2,3")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("filter", help="spatial-tonal filter a PGM image")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--spatial-sigma", type=float, default=1.0)
    p.add_argument("--tonal-kernel", choices=tonal.TONAL_KERNELS, default="gaussian")
    p.add_argument("--tonal-sigma", type=float, default=0.1)
    p.add_argument("--estimator", choices=tonal.ESTIMATORS, default="center")
    p.add_argument("--dissimilarity", choices=tonal.DISSIMILARITIES, default="squared")
    p.add_argument("--huber-delta", type=float, default=0.1)
    p.add_argument("--boundary", choices=tonal.BOUNDARIES, default="mirror")
    p.set_defaults(func=cmd_filter)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # Subparsers do not forward a bare "--" separator, so split inline values
    # (which may be negative and look like options) off before parsing.
    trailing: list[str] = []
    if "--" in argv:
        split = argv.index("--")
        argv, trailing = argv[:split], argv[split + 1 :]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if trailing:
        if not hasattr(args, "values"):
            print("error: inline values are only accepted by 'aggregate'", file=sys.stderr)
            return 2
        args.values = list(args.values) + trailing
    try:
        return args.func(args)
    except (ValueError, OSError, pgm.PgmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
