"""Error-rate metric, model-comparison harness, and synthetic trajectories.

The comparison runs a list of model kinds over the same trajectory and
scores each prediction against the ground-truth sample at the target
frame. A kind whose fit (or prediction) fails is reported as an
unavailable row instead of aborting the table.

Synthetic trajectories are bit-reproducible: each axis consumes its own
Mersenne Twister stream (CPython ``random.Random``), X seeded with
``2*seed`` and Y with ``2*seed + 1``. Normal deviates come from an
explicit Box-Muller transform over the generator's uniforms, so the
streams depend only on the documented, platform-independent ``random()``
sequence. Every frame consumes exactly four uniforms per axis (two for
the log-space noise deviate, one for the shake decision, one for the
shake displacement) regardless of parameter values.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import (
    FitError,
    GenerationError,
    MissingTruthError,
    ParseError,
    PredictionRangeError,
    UndefinedReferenceError,
    ValidationError,
)
from .ingest import Axis, AxisSeries
from .numfmt import fixed6
from .regression import (
    COS_EXPONENTIAL,
    EXPONENTIAL,
    SIN_EXPONENTIAL,
    ModelKind,
    polynomial,
)
from .trajectory import WindowConfig, predict_endpoint

# Row order of the default four-model comparison.
DEFAULT_KINDS: tuple[ModelKind, ...] = (
    SIN_EXPONENTIAL,
    COS_EXPONENTIAL,
    EXPONENTIAL,
    polynomial(2),
)

COMPARISON_CSV_HEADER = "model,err_x_pct,err_y_pct,t_target,pred_x,pred_y,actual_x,actual_y"


@dataclass(frozen=True)
class ErrorReport:
    """Per-model prediction errors at the target frame.

    ``err_x_pct``/``err_y_pct``/``predicted`` are None (unavailable) when
    the fit or the prediction failed; ``failure`` then carries the reason.
    """

    kind: ModelKind
    err_x_pct: float | None
    err_y_pct: float | None
    t_target: float
    predicted: tuple[float, float] | None
    actual: tuple[float, float]
    failure: str | None = None


class Variant(Enum):
    PURE_EXPONENTIAL = "pure_exponential"
    SIN_EXPONENTIAL = "sin_exponential"


@dataclass(frozen=True)
class SyntheticSpec:
    """Seeded generator parameters for one oracle trajectory."""

    a_x: float
    b_x: float
    a_y: float
    b_y: float
    variant: Variant = Variant.PURE_EXPONENTIAL
    n_frames: int = 100
    noise_sigma: float = 0.0
    shake_prob: float = 0.0
    shake_scale: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_frames < 1:
            raise ValidationError(f"n_frames must be >= 1, got {self.n_frames}")
        if self.noise_sigma < 0:
            raise ValidationError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if not 0.0 <= self.shake_prob <= 1.0:
            raise ValidationError(f"shake_prob must be in [0, 1], got {self.shake_prob}")
        if self.shake_scale < 0:
            raise ValidationError(f"shake_scale must be >= 0, got {self.shake_scale}")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be an unsigned 64-bit integer")


def error_rate(predicted: float, actual: float) -> float:
    """|predicted - actual| / |actual| * 100."""
    if actual == 0.0:
        raise UndefinedReferenceError("error rate is undefined for actual = 0")
    return abs(predicted - actual) / abs(actual) * 100.0


def _value_at(series: AxisSeries, t: float) -> float:
    for st, sv in series.samples:
        if st == t:
            return sv
    raise MissingTruthError(
        f"no ground-truth sample at t={t!r} on the {series.axis.value} series"
    )


def evaluate(
    xs: AxisSeries,
    ys: AxisSeries,
    kind: ModelKind,
    cutoff_t: float,
    config: WindowConfig,
    clamp_nonpositive: bool = False,
) -> ErrorReport:
    """Score one model: fit on t <= cutoff, read truth at cutoff + horizon."""
    t_target = cutoff_t + config.horizon
    actual = (_value_at(xs, t_target), _value_at(ys, t_target))
    try:
        point = predict_endpoint(xs, ys, kind, config, cutoff_t,
                                 clamp_nonpositive=clamp_nonpositive)
    except (FitError, PredictionRangeError) as exc:
        return ErrorReport(kind, None, None, t_target, None, actual, failure=str(exc))
    return ErrorReport(
        kind=kind,
        err_x_pct=error_rate(point.x, actual[0]),
        err_y_pct=error_rate(point.y, actual[1]),
        t_target=t_target,
        predicted=(point.x, point.y),
        actual=actual,
    )


def compare(
    xs: AxisSeries,
    ys: AxisSeries,
    kinds: Sequence[ModelKind],
    cutoff_t: float,
    config: WindowConfig,
    clamp_nonpositive: bool = False,
) -> list[ErrorReport]:
    """One ErrorReport per kind, in the requested order.

    A failing kind yields an unavailable row; a missing ground-truth sample
    aborts the whole table.
    """
    return [evaluate(xs, ys, kind, cutoff_t, config, clamp_nonpositive) for kind in kinds]


def _box_muller(rng: random.Random) -> float:
    # 1 - random() keeps the log argument in (0, 1].
    u1 = 1.0 - rng.random()
    u2 = rng.random()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def _synth_axis(axis: Axis, a: float, b: float, spec: SyntheticSpec,
                rng: random.Random) -> tuple[tuple[float, float], ...]:
    samples = []
    for frame in range(spec.n_frames):
        t = float(frame)
        try:
            base = math.exp(a * t + b)
            if spec.variant is Variant.SIN_EXPONENTIAL:
                base += math.sin(a)
            noise = _box_muller(rng)
            shake_decision = rng.random()
            shake_offset = spec.shake_scale * (2.0 * rng.random() - 1.0)
            value = base * math.exp(spec.noise_sigma * noise)
        except OverflowError:
            raise GenerationError(
                f"generated value overflows at frame {frame} on the {axis.value} axis"
            ) from None
        if shake_decision < spec.shake_prob:
            value += shake_offset
        if not math.isfinite(value):
            raise GenerationError(
                f"generated value overflows at frame {frame} on the {axis.value} axis"
            )
        if not value > 0.0:
            raise GenerationError(
                f"generated non-positive value {value!r} at frame {frame} "
                f"on the {axis.value} axis"
            )
        samples.append((t, value))
    return tuple(samples)


def synthesize(spec: SyntheticSpec) -> tuple[AxisSeries, AxisSeries]:
    """Generate the (X, Y) series for t = 0 .. n_frames - 1."""
    xs = _synth_axis(Axis.X, spec.a_x, spec.b_x, spec, random.Random(2 * spec.seed))
    ys = _synth_axis(Axis.Y, spec.a_y, spec.b_y, spec, random.Random(2 * spec.seed + 1))
    return AxisSeries(Axis.X, xs), AxisSeries(Axis.Y, ys)


_SPEC_FLOAT_KEYS = ("a_x", "b_x", "a_y", "b_y", "noise_sigma", "shake_prob", "shake_scale")
_SPEC_INT_KEYS = ("n_frames", "seed")
_SPEC_REQUIRED = ("a_x", "b_x", "a_y", "b_y", "n_frames")


def parse_synthetic_spec(text: str) -> SyntheticSpec:
    """Parse a flat ``key = value`` spec document.

    Keys are exactly the SyntheticSpec field names; unknown and duplicate
    keys are rejected. ``a_x``, ``b_x``, ``a_y``, ``b_y`` and ``n_frames``
    are required, the rest default to a noiseless, unshaken trajectory with
    seed 0. Blank lines and lines starting with '#' are skipped.
    """
    values: dict[str, object] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"line {line_no}: expected 'key = value'")
        key = key.strip()
        value = value.strip()
        if key in values:
            raise ValidationError(f"line {line_no}: duplicate key '{key}'")
        if key in _SPEC_FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ParseError(f"line {line_no}: value for '{key}' must be a number") from None
            if not math.isfinite(values[key]):
                raise ParseError(f"line {line_no}: value for '{key}' must be finite")
        elif key in _SPEC_INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ParseError(
                    f"line {line_no}: value for '{key}' must be an integer"
                ) from None
        elif key == "variant":
            try:
                values[key] = Variant(value)
            except ValueError:
                tokens = ", ".join(v.value for v in Variant)
                raise ParseError(
                    f"line {line_no}: variant must be one of: {tokens}"
                ) from None
        else:
            raise ValidationError(f"line {line_no}: unknown key '{key}'")
    for key in _SPEC_REQUIRED:
        if key not in values:
            raise ValidationError(f"missing required key '{key}'")
    return SyntheticSpec(**values)  # type: ignore[arg-type]


def _fmt(value: float | None) -> str:
    return "" if value is None else fixed6(value)


def comparison_csv(reports: Iterable[ErrorReport]) -> str:
    """Render reports as CSV; unavailable values become empty fields."""
    lines = [COMPARISON_CSV_HEADER]
    for r in reports:
        pred_x, pred_y = r.predicted if r.predicted is not None else (None, None)
        lines.append(
            ",".join(
                [
                    r.kind.label,
                    _fmt(r.err_x_pct),
                    _fmt(r.err_y_pct),
                    _fmt(r.t_target),
                    _fmt(pred_x),
                    _fmt(pred_y),
                    _fmt(r.actual[0]),
                    _fmt(r.actual[1]),
                ]
            )
        )
    return "".join(line + "\n" for line in lines)


def comparison_text(reports: Sequence[ErrorReport]) -> str:
    """Aligned three-column rendering; unavailable values become a dash."""
    rows = [("Regression", "x-error %", "y-error %")]
    for r in reports:
        rows.append(
            (
                r.kind.label,
                _fmt(r.err_x_pct) or "-",
                _fmt(r.err_y_pct) or "-",
            )
        )
    widths = [max(len(row[col]) for row in rows) for col in range(3)]
    lines = []
    for name, ex, ey in rows:
        lines.append(f"{name:<{widths[0]}}  {ex:>{widths[1]}}  {ey:>{widths[2]}}")
    return "".join(line + "\n" for line in lines)


def batch_compare(
    specs: Sequence[SyntheticSpec],
    kinds: Sequence[ModelKind],
    cutoff_t: float,
    config: WindowConfig,
    parallel: bool = False,
) -> list[list[ErrorReport]]:
    """Score many synthetic trajectories; parallel execution is
    bit-identical to sequential because each spec owns its seed streams."""

    def score(spec: SyntheticSpec) -> list[ErrorReport]:
        xs, ys = synthesize(spec)
        return compare(xs, ys, kinds, cutoff_t, config)

    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(score, specs))
    return [score(spec) for spec in specs]
