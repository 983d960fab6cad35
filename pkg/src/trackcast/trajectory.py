"""Windowed per-axis fitting, horizon prediction, and defect gating."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TrackcastError, ValidationError
from .ingest import AxisSeries
from .regression import FitResult, ModelKind, fit_model, predict

DEFAULT_HORIZON = 60


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle in pixel space; the defect gate boundary."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self) -> None:
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValidationError(
                "region requires x_min < x_max and y_min < y_max, got "
                f"[{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}]"
            )


@dataclass(frozen=True)
class WindowConfig:
    """History window and prediction horizon, both in frames.

    ``length`` None means the entire history.
    """

    length: int | None = None
    horizon: int = DEFAULT_HORIZON

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValidationError(f"horizon must be >= 1, got {self.horizon}")
        if self.length is not None and self.length < 2:
            raise ValidationError(f"window length must be >= 2, got {self.length}")


@dataclass(frozen=True)
class PredictedEndpoint:
    t_target: float
    x: float
    y: float
    defect: bool


def window(series: AxisSeries, config: WindowConfig, cutoff_t: float) -> AxisSeries:
    """Samples with t <= cutoff_t, keeping only the last ``length`` of them."""
    kept = tuple(s for s in series.samples if s[0] <= cutoff_t)
    if config.length is not None:
        kept = kept[-config.length:]
    return AxisSeries(series.axis, kept)


def gate(point: tuple[float, float], region: Region) -> bool:
    """True iff the point lies outside the region; the boundary is inside."""
    x, y = point
    return x < region.x_min or x > region.x_max or y < region.y_min or y > region.y_max


def fit_axis(
    series: AxisSeries,
    kind: ModelKind,
    config: WindowConfig,
    cutoff_t: float,
    clamp_nonpositive: bool = False,
) -> FitResult:
    """Fit one windowed axis; failures are re-raised naming the axis."""
    try:
        return fit_model(window(series, config, cutoff_t), kind, clamp_nonpositive)
    except TrackcastError as exc:
        raise type(exc)(f"{series.axis.value} axis: {exc}") from exc


def predict_endpoint(
    xs: AxisSeries,
    ys: AxisSeries,
    kind: ModelKind,
    config: WindowConfig,
    cutoff_t: float,
    region: Region | None = None,
    clamp_nonpositive: bool = False,
) -> PredictedEndpoint:
    """Fit both axes on windowed history and predict horizon frames ahead.

    The defect verdict is False whenever no region is supplied.
    """
    t_target = cutoff_t + config.horizon
    x = _predict_axis(xs, kind, config, cutoff_t, t_target, clamp_nonpositive)
    y = _predict_axis(ys, kind, config, cutoff_t, t_target, clamp_nonpositive)
    defect = gate((x, y), region) if region is not None else False
    return PredictedEndpoint(t_target=t_target, x=x, y=y, defect=defect)


def _predict_axis(series, kind, config, cutoff_t, t_target, clamp_nonpositive) -> float:
    fit = fit_axis(series, kind, config, cutoff_t, clamp_nonpositive)
    try:
        return predict(fit, t_target)
    except TrackcastError as exc:
        raise type(exc)(f"{series.axis.value} axis: {exc}") from exc
