"""Command-line interface.

Commands:
    trackcast simulate --spec traj.spec --seed 42 --out stream.jsonl
    trackcast fit --input stream.jsonl --axis x --model exp
    trackcast predict --input stream.jsonl --model sinexp --region 0,0,640,480
    trackcast compare --input stream.jsonl --cutoff 30
    trackcast plot --input stream.jsonl --model sinexp --out fit.svg

Exit codes: 0 success (no defect), 3 defect predicted, 2 usage, parse, or
fit error. Diagnostics go to standard error. All numbers are printed with
six decimal places so outputs are byte-stable.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import sys

from . import evaluation, svgplot
from .errors import InsufficientDataError, TrackcastError
from .numfmt import fixed6
from .ingest import (
    AxisSeries,
    StreamFormat,
    build_series,
    parse_detections,
    select_per_frame,
    to_observation,
)
from .regression import FitResult, ModelKind, predict
from .trajectory import (
    DEFAULT_HORIZON,
    Region,
    WindowConfig,
    fit_axis,
    predict_endpoint,
    window,
)

SIMULATED_BOX_SIZE = 4.0
SIMULATED_LABEL = "rebar_endpoint"


def _window_arg(text: str) -> int | None:
    if text.lower() == "all":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be an integer or 'all', got {text!r}")


def _region_arg(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("region must be x0,y0,x1,y1")
    try:
        return tuple(float(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise argparse.ArgumentTypeError("region coordinates must be numbers")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, content: str) -> None:
    if path == "-":
        sys.stdout.write(content)
        return
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)


def _load_series(args) -> tuple[AxisSeries, AxisSeries]:
    fmt = StreamFormat(args.format)
    records = select_per_frame(parse_detections(_read(args.input), fmt))
    xs, ys = build_series([to_observation(r) for r in records])
    if not xs.samples:
        raise InsufficientDataError("input stream contains no detections")
    return xs, ys


def _model_kind(args) -> ModelKind:
    return ModelKind.parse(args.model, default_degree=args.poly_degree)


def _cutoff(args, fallback: float) -> float:
    return fallback if args.cutoff is None else args.cutoff


def _add_stream_options(sub) -> None:
    sub.add_argument("--input", default="-", help="detection stream path, '-' for stdin")
    sub.add_argument("--format", choices=["jsonl", "csv"], default="jsonl",
                     help="input stream format")


def _add_fit_options(sub) -> None:
    sub.add_argument("--model", default="sinexp",
                     help="linear|exp|sinexp|cosexp|poly|polyN")
    sub.add_argument("--poly-degree", type=int, default=2,
                     help="degree used when the model is 'poly'")
    sub.add_argument("--window", type=_window_arg, default=None,
                     help="frames of history used for fitting (integer or 'all')")
    sub.add_argument("--cutoff", type=float, default=None,
                     help="last frame visible to the fit")
    sub.add_argument("--clamp-nonpositive", action="store_true",
                     help="lift non-positive values to 1e-9 instead of failing")


def cmd_simulate(args) -> int:
    spec = evaluation.parse_synthetic_spec(_read(args.spec))
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    xs, ys = evaluation.synthesize(spec)
    half = SIMULATED_BOX_SIZE / 2.0
    lines = []
    for (t, x), (_, y) in zip(xs.samples, ys.samples):
        lines.append(
            f'{{"frame": {int(t)}, "left": {fixed6(x - half)}, "top": {fixed6(y - half)}, '
            f'"width": {fixed6(SIMULATED_BOX_SIZE)}, "height": {fixed6(SIMULATED_BOX_SIZE)}, '
            f'"confidence": 1.000000, "label": "{SIMULATED_LABEL}"}}'
        )
    _write(args.out, "".join(line + "\n" for line in lines))
    return 0


def _fit_report(fit: FitResult) -> str:
    lines = [f"kind = {fit.kind.label}"]
    if fit.coefficients:
        lines.append("coefficients = " + ",".join(fixed6(c) for c in fit.coefficients))
    else:
        lines.append(f"a = {fixed6(fit.a)}")
        lines.append(f"b = {fixed6(fit.b)}")
    lines.append(f"n_points = {fit.n_points}")
    lines.append(f"rmse = {fixed6(fit.rmse)}")
    return "".join(line + "\n" for line in lines)


def cmd_fit(args) -> int:
    xs, ys = _load_series(args)
    series = xs if args.axis == "x" else ys
    config = WindowConfig(length=args.window, horizon=DEFAULT_HORIZON)
    cutoff = _cutoff(args, math.inf)
    fit = fit_axis(series, _model_kind(args), config, cutoff, args.clamp_nonpositive)
    sys.stdout.write(_fit_report(fit))
    return 0


def cmd_predict(args) -> int:
    xs, ys = _load_series(args)
    config = WindowConfig(length=args.window, horizon=args.horizon)
    cutoff = _cutoff(args, xs.samples[-1][0])
    region = None
    if args.region is not None:
        x0, y0, x1, y1 = args.region
        region = Region(x_min=x0, x_max=x1, y_min=y0, y_max=y1)
    point = predict_endpoint(xs, ys, _model_kind(args), config, cutoff, region,
                             args.clamp_nonpositive)
    verdict = "true" if point.defect else "false"
    sys.stdout.write(
        f"{fixed6(point.t_target)},{fixed6(point.x)},{fixed6(point.y)},{verdict}\n"
    )
    return 3 if point.defect else 0


def cmd_compare(args) -> int:
    xs, ys = _load_series(args)
    kinds = [
        ModelKind.parse(token, default_degree=args.poly_degree)
        for token in args.models.split(",")
    ] if args.models else list(evaluation.DEFAULT_KINDS)
    config = WindowConfig(length=args.window, horizon=args.horizon)
    cutoff = _cutoff(args, xs.samples[-1][0] - args.horizon)
    reports = evaluation.compare(xs, ys, kinds, cutoff, config, args.clamp_nonpositive)
    if args.table == "text":
        _write(args.out, evaluation.comparison_text(reports))
    else:
        _write(args.out, evaluation.comparison_csv(reports))
    return 0


def cmd_plot(args) -> int:
    xs, ys = _load_series(args)
    kind = _model_kind(args)
    config = WindowConfig(length=args.window, horizon=args.horizon)
    cutoff = _cutoff(args, xs.samples[-1][0])
    t_target = cutoff + config.horizon
    panels = []
    for series in (xs, ys):
        windowed = window(series, config, cutoff)
        fit = fit_axis(series, kind, config, cutoff, args.clamp_nonpositive)
        start = windowed.samples[0][0]
        curve_ts = [float(t) for t in range(math.ceil(start), math.floor(t_target) + 1)]
        if not curve_ts or curve_ts[-1] != t_target:
            curve_ts.append(t_target)
        curve = tuple((t, predict(fit, t)) for t in curve_ts)
        panels.append(
            svgplot.Panel(
                title=series.axis.value,
                samples=windowed.samples,
                curve=curve,
                prediction=(t_target, predict(fit, t_target)),
            )
        )
    _write(args.out, svgplot.render_prediction_svg(panels[0], panels[1]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trackcast",
        description="Fit tracked-endpoint trajectories and predict positions "
                    "a configurable number of frames ahead.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="generate a synthetic detection stream")
    sim.add_argument("--spec", required=True, help="synthetic trajectory spec file")
    sim.add_argument("--seed", type=int, default=None, help="override the spec's seed")
    sim.add_argument("--out", default="-", help="output path, '-' for stdout")
    sim.set_defaults(func=cmd_simulate)

    fit = subs.add_parser("fit", help="fit one axis and print the parameters")
    _add_stream_options(fit)
    _add_fit_options(fit)
    fit.add_argument("--axis", choices=["x", "y"], required=True)
    fit.set_defaults(func=cmd_fit)

    pred = subs.add_parser("predict", help="predict the endpoint position ahead")
    _add_stream_options(pred)
    _add_fit_options(pred)
    pred.add_argument("--horizon", type=int, default=DEFAULT_HORIZON,
                      help="frames ahead of the cutoff")
    pred.add_argument("--region", type=_region_arg, default=None,
                      help="defect gate rectangle x0,y0,x1,y1")
    pred.set_defaults(func=cmd_predict)

    comp = subs.add_parser("compare", help="score several models against ground truth")
    _add_stream_options(comp)
    _add_fit_options(comp)
    comp.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    comp.add_argument("--models", default=None,
                      help="comma-separated model list (default: sinexp,cosexp,exp,poly)")
    comp.add_argument("--table", choices=["csv", "text"], default="csv",
                      help="output rendering")
    comp.add_argument("--out", default="-", help="output path, '-' for stdout")
    comp.set_defaults(func=cmd_compare)

    plot = subs.add_parser("plot", help="emit a two-panel SVG of fit and prediction")
    _add_stream_options(plot)
    _add_fit_options(plot)
    plot.add_argument("--horizon", type=int, default=DEFAULT_HORIZON)
    plot.add_argument("--out", required=True, help="SVG output path")
    plot.set_defaults(func=cmd_plot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TrackcastError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
