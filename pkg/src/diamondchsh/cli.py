"""Command-line interface: single-scenario evaluation, parameter search,
plot-data emission, and Bessel validation tables.

Configuration may come from flags or from a JSON file (--config); explicit
flags override file values.  Exit codes: 0 success, 1 usage or I/O error,
2 when an evaluation lands above the Tsirelson bound (numerical-fault
signal, reserved so CI can tell it apart from usage errors).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .chsh import (
    Classification,
    chsh_correlator,
    correlator_terms,
    scenario_from_params,
)
from .kernels import DEFAULT_GUARD, KernelGuard, SpacetimePoint, hadamard_kernel
from .quad import QuadPlan, integrate_tensor_oracle
from .search import CSV_HEADER, ParamRanges, persist_records, random_search
from .special import j0, k0, y0
from .testfns import DiamondSide, DiamondTestFunction

__all__ = ["main"]

_EVAL_PARAMS = (
    "a", "eta", "b", "sigma", "a_prime", "eta_prime", "b_prime",
    "sigma_prime", "mass", "r", "r_prime",
)
_RANGE_PARAMS = (
    "a", "eta", "b", "sigma", "a_prime", "eta_prime", "b_prime",
    "sigma_prime", "m", "r", "r_prime",
)
_BILINEAR_NAMES = ("ff", "fpfp", "gg", "gpgp", "fg", "fgp", "fpg", "fpgp")
_ORACLE_LEVEL = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the spec wants 1
        raise UsageError(message)


def _range_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return float(parts[0]), float(parts[1])


def _add_common(sub, plan_flags=True):
    sub.add_argument("--config", help="JSON config file; flags override it")
    sub.add_argument("--out", help="output path (default: stdout)")
    sub.add_argument("--figure", help="render a matplotlib figure to this path")
    if plan_flags:
        sub.add_argument("--seed", type=int, help="64-bit unsigned seed")
        sub.add_argument("--points", type=int,
                         help="QMC points per replicate (power of two)")
        sub.add_argument("--replicates", type=int, help="QMC replicates (>= 2)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="diamondchsh", description=__doc__)
    subs = parser.add_subparsers(dest="command")

    p_eval = subs.add_parser("eval", help="evaluate one scenario",
                             description="Evaluate the Bell-CHSH correlator "
                             "for one 11-parameter scenario.")
    _add_common(p_eval)
    p_eval.add_argument("--format", choices=("csv", "json"), dest="fmt")
    p_eval.add_argument("--cross-check", action="store_true", default=None,
                        help="also print tensor-oracle values and QMC/oracle "
                        "discrepancies")
    p_eval.add_argument("--lambda-floor", type=float,
                        help="light-cone guard override (accuracy contract "
                        "holds only for values <= 1e-12)")
    for name in _EVAL_PARAMS:
        p_eval.add_argument(f"--{name.replace('_', '-')}", type=float,
                            dest=name)
    p_eval.set_defaults(handler=_cmd_eval)

    p_search = subs.add_parser("search", help="random parameter search",
                               description="Sample the 11-parameter space "
                               "and rank the best violations.")
    _add_common(p_search)
    p_search.add_argument("--samples", type=int, help="number of draws")
    p_search.add_argument("--top-k", type=int, dest="top_k",
                          help="records to keep")
    p_search.add_argument("--threads", type=int,
                          help="worker threads (result-invariant)")
    for name in _RANGE_PARAMS:
        p_search.add_argument(f"--range-{name.replace('_', '-')}",
                              type=_range_pair, dest=f"range_{name}",
                              metavar="LO,HI")
    p_search.set_defaults(handler=_cmd_search)

    p_plot = subs.add_parser("emit-plot", help="sample a test function on a grid",
                             description="Write (t, x, value) samples of one "
                             "diamond test function over its support box.")
    _add_common(p_plot, plan_flags=False)
    p_plot.add_argument("--side", choices=("right", "left"))
    p_plot.add_argument("--radius", type=float)
    p_plot.add_argument("--sharpness", type=float)
    p_plot.add_argument("--amplitude", type=float)
    p_plot.add_argument("--grid", type=int,
                        help="cells per axis (grid has N+1 points per axis)")
    p_plot.set_defaults(handler=_cmd_emit_plot)

    p_bessel = subs.add_parser("bessel-table", help="tabulate J0, Y0, K0",
                               description="CSV of (x, J0, Y0, K0) on a grid, "
                               "for external validation.")
    _add_common(p_bessel, plan_flags=False)
    p_bessel.add_argument("--min", type=float, dest="grid_min")
    p_bessel.add_argument("--max", type=float, dest="grid_max")
    p_bessel.add_argument("--count", type=int)
    p_bessel.add_argument("--spacing", choices=("linear", "log"))
    p_bessel.set_defaults(handler=_cmd_bessel_table)

    return parser


def _load_config(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    try:
        with open(args.config) as handle:
            config = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}")
    if not isinstance(config, dict):
        raise UsageError(f"config {args.config} must hold a JSON object")
    return config


def _resolve(args, config, name, default=None, required=False):
    value = getattr(args, name, None)
    if value is None:
        value = config.get(name, default)
    if required and value is None:
        raise UsageError(f"missing required parameter: {name}")
    return value


def _plan_from(args, config) -> QuadPlan:
    return QuadPlan(
        points_per_replicate=int(_resolve(args, config, "points", 2 ** 16)),
        replicates=int(_resolve(args, config, "replicates", 16)),
        seed=int(_resolve(args, config, "seed", 0)),
    )


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_eval(args) -> int:
    config = _load_config(args)
    values = {name: float(_resolve(args, config, name, required=True))
              for name in _EVAL_PARAMS}
    plan = _plan_from(args, config)
    floor = _resolve(args, config, "lambda_floor")
    guard = KernelGuard(float(floor)) if floor is not None else DEFAULT_GUARD
    fmt = _resolve(args, config, "fmt", "csv")
    cross = bool(_resolve(args, config, "cross_check", False))

    scenario = scenario_from_params(
        values["a"], values["eta"], values["b"], values["sigma"],
        values["a_prime"], values["eta_prime"], values["b_prime"],
        values["sigma_prime"], values["mass"], values["r"], values["r_prime"],
    )
    result = chsh_correlator(scenario, plan, guard)
    bl = result.bilinears

    oracle = None
    if cross:
        pairs = {
            "ff": (scenario.f, scenario.f),
            "fpfp": (scenario.f_prime, scenario.f_prime),
            "gg": (scenario.g, scenario.g),
            "gpgp": (scenario.g_prime, scenario.g_prime),
            "fg": (scenario.f, scenario.g),
            "fgp": (scenario.f, scenario.g_prime),
            "fpg": (scenario.f_prime, scenario.g),
            "fpgp": (scenario.f_prime, scenario.g_prime),
        }
        kernel = lambda p: hadamard_kernel(p, scenario.mass, guard)
        oracle = {name: integrate_tensor_oracle(u, v, kernel, _ORACLE_LEVEL)
                  for name, (u, v) in pairs.items()}

    if fmt == "json":
        payload = {
            "bilinears": {
                name: {
                    "value": getattr(bl, name).value,
                    "std_error": getattr(bl, name).std_error,
                    "n_points": getattr(bl, name).n_points,
                }
                for name in _BILINEAR_NAMES
            },
            "correlator": result.correlator,
            "correlator_error": result.correlator_error,
            "classification": result.classification.value,
        }
        if oracle is not None:
            payload["cross_check"] = {
                name: {
                    "oracle": oracle[name],
                    "discrepancy": getattr(bl, name).value - oracle[name],
                }
                for name in _BILINEAR_NAMES
            }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        header, row = [], []
        for name in _BILINEAR_NAMES:
            header += [name, f"{name}_err"]
            row += [repr(getattr(bl, name).value),
                    repr(getattr(bl, name).std_error)]
        header += ["correlator", "correlator_error", "classification"]
        row += [repr(result.correlator), repr(result.correlator_error),
                result.classification.value]
        if oracle is not None:
            for name in _BILINEAR_NAMES:
                header += [f"oracle_{name}", f"disc_{name}"]
                row += [repr(oracle[name]),
                        repr(getattr(bl, name).value - oracle[name])]
        text = _csv_text(header, [row])
    _emit(text, args.out)

    if args.figure:
        from . import plots

        plots.render_eval_terms(correlator_terms(bl), result.correlator,
                                args.figure)
    return 2 if result.classification is Classification.ABOVE_TSIRELSON else 0


def _cmd_search(args) -> int:
    config = _load_config(args)
    plan = _plan_from(args, config)
    samples = int(_resolve(args, config, "samples", 1000))
    top_k = int(_resolve(args, config, "top_k", 5))
    threads = int(_resolve(args, config, "threads", 1))
    seed = int(_resolve(args, config, "seed", 0))
    out = _resolve(args, config, "out", required=True)

    overrides = {}
    for name in _RANGE_PARAMS:
        pair = _resolve(args, config, f"range_{name}")
        if pair is not None:
            overrides[name] = (float(pair[0]), float(pair[1]))
    ranges = ParamRanges(**overrides)

    records = random_search(ranges, samples, seed, plan, top_k,
                            threads=threads)
    try:
        persist_records(records, out)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return 1

    widths = 11
    names = CSV_HEADER[1:12] + ("C", "err", "class")
    print("  ".join(f"{n:>{widths}}" for n in names))
    for rec in records:
        cells = [f"{v:>{widths}.6f}" for v in rec.params]
        cells += [f"{rec.correlator:>{widths}.6f}",
                  f"{rec.correlator_error:>{widths}.2e}",
                  f"{rec.classification.value:>{widths}}"]
        print("  ".join(cells))

    if args.figure:
        from . import plots

        plots.render_search_records(records, args.figure)
    return 0


def _cmd_emit_plot(args) -> int:
    config = _load_config(args)
    side_name = _resolve(args, config, "side", "right")
    side = DiamondSide.RIGHT if side_name == "right" else DiamondSide.LEFT
    # figure-caption defaults: sharpness 0.1, amplitude 1, radius 2
    fn = DiamondTestFunction(
        side=side,
        radius=float(_resolve(args, config, "radius", 2.0)),
        sharpness=float(_resolve(args, config, "sharpness", 0.1)),
        amplitude=float(_resolve(args, config, "amplitude", 1.0)),
    )
    grid = int(_resolve(args, config, "grid", 100))
    if grid < 1:
        raise UsageError("grid must be >= 1")
    box = fn.support_box()
    t = np.linspace(box.t_min, box.t_max, grid + 1)
    x = np.linspace(box.x_min, box.x_max, grid + 1)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    values = fn(SpacetimePoint(tt, xx))
    rows = [
        (repr(float(tt[i, j])), repr(float(xx[i, j])), repr(float(values[i, j])))
        for i in range(grid + 1)
        for j in range(grid + 1)
    ]
    _emit(_csv_text(("t", "x", "value"), rows), args.out)

    if args.figure:
        from . import plots

        plots.render_test_function(t, x, values, fn, args.figure)
    return 0


def _cmd_bessel_table(args) -> int:
    config = _load_config(args)
    grid_min = float(_resolve(args, config, "grid_min", required=True))
    grid_max = float(_resolve(args, config, "grid_max", required=True))
    count = int(_resolve(args, config, "count", required=True))
    spacing = _resolve(args, config, "spacing", "linear")
    if count < 1:
        raise UsageError("count must be >= 1")
    if grid_min <= 0.0:
        raise UsageError("grid must satisfy x > 0 (Y0 and K0 domain)")
    if grid_max < grid_min:
        raise UsageError("max must be >= min")
    if spacing == "log":
        xs = np.logspace(math.log10(grid_min), math.log10(grid_max), count)
    else:
        xs = np.linspace(grid_min, grid_max, count)
    rows_num = [(float(x), j0(float(x)), y0(float(x)), k0(float(x)))
                for x in xs]
    rows = [tuple(repr(v) for v in row) for row in rows_num]
    _emit(_csv_text(("x", "j0", "y0", "k0"), rows), args.out)

    if args.figure:
        from . import plots

        plots.render_bessel_table(rows_num, args.figure)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
