"""Regression family for per-axis trajectory fitting.

All exponential-family variants share one ordinary least squares fit on
(t, ln v): the slope is the growth coefficient a and the raw intercept c.
The sin/cos variants absorb their constant correction term into the
intercept, b = c - sin(a) (resp. cos), so that the prediction form
exp(a*t + b) + sin(a) reproduces the fitted log-line plus the correction.
The polynomial kind is the non-linear comparison baseline, solved through
the normal equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import (
    DegenerateAbscissaError,
    DomainError,
    InsufficientDataError,
    PredictionRangeError,
    ValidationError,
)
from .ingest import AxisSeries

# Opt-in replacement for non-positive values under exponential-family fits.
CLAMP_FLOOR = 1e-9

# Relative determinant threshold below which the polynomial normal
# equations are rejected as ill-conditioned.
DETERMINANT_GUARD = 1e-12


class ModelFamily(Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exp"
    SIN_EXPONENTIAL = "sinexp"
    COS_EXPONENTIAL = "cosexp"
    POLYNOMIAL = "poly"


EXPONENTIAL_FAMILIES = frozenset(
    {ModelFamily.EXPONENTIAL, ModelFamily.SIN_EXPONENTIAL, ModelFamily.COS_EXPONENTIAL}
)


@dataclass(frozen=True)
class ModelKind:
    """A model selector: family plus degree for the polynomial baseline."""

    family: ModelFamily
    degree: int = 0

    def __post_init__(self) -> None:
        if self.family is ModelFamily.POLYNOMIAL:
            if self.degree < 1:
                raise ValidationError("polynomial degree must be >= 1")
        elif self.degree != 0:
            raise ValidationError(f"{self.family.value} takes no degree")

    @property
    def label(self) -> str:
        if self.family is ModelFamily.POLYNOMIAL:
            return f"poly{self.degree}"
        return self.family.value

    @property
    def min_points(self) -> int:
        return self.degree + 1 if self.family is ModelFamily.POLYNOMIAL else 2

    @classmethod
    def parse(cls, token: str, default_degree: int = 2) -> "ModelKind":
        """Parse a CLI token: linear|exp|sinexp|cosexp|poly|polyN."""
        token = token.strip().lower()
        for family in ModelFamily:
            if token == family.value and family is not ModelFamily.POLYNOMIAL:
                return cls(family)
        if token == "poly":
            return cls(ModelFamily.POLYNOMIAL, default_degree)
        if token.startswith("poly") and token[4:].isdigit():
            return cls(ModelFamily.POLYNOMIAL, int(token[4:]))
        raise ValidationError(f"unknown model '{token}'")


LINEAR = ModelKind(ModelFamily.LINEAR)
EXPONENTIAL = ModelKind(ModelFamily.EXPONENTIAL)
SIN_EXPONENTIAL = ModelKind(ModelFamily.SIN_EXPONENTIAL)
COS_EXPONENTIAL = ModelKind(ModelFamily.COS_EXPONENTIAL)


def polynomial(degree: int) -> ModelKind:
    return ModelKind(ModelFamily.POLYNOMIAL, degree)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float


@dataclass(frozen=True)
class FitResult:
    """A fitted model. ``a``/``b`` are the growth coefficient and corrected
    intercept (unused for polynomials, which carry ascending-power
    ``coefficients`` instead). ``rmse`` is measured in original value space.
    """

    kind: ModelKind
    a: float
    b: float
    coefficients: tuple[float, ...]
    n_points: int
    rmse: float


Pairs = Sequence[tuple[float, float]]


def fit_linear(pairs: Pairs) -> LinearFit:
    """Ordinary least squares line through (t, v) pairs."""
    n = len(pairs)
    if n < 2:
        raise InsufficientDataError(f"linear fit needs at least 2 pairs, got {n}")
    t0 = pairs[0][0]
    if all(t == t0 for t, _ in pairs):
        raise DegenerateAbscissaError("all t values are equal; cannot fit a slope")
    t_mean = sum(t for t, _ in pairs) / n
    v_mean = sum(v for _, v in pairs) / n
    s_tt = sum((t - t_mean) ** 2 for t, _ in pairs)
    s_tv = sum((t - t_mean) * (v - v_mean) for t, v in pairs)
    if s_tt == 0.0:
        raise DegenerateAbscissaError("t values are numerically indistinguishable")
    slope = s_tv / s_tt
    return LinearFit(slope=slope, intercept=v_mean - slope * t_mean)


def fit_model(series: AxisSeries, kind: ModelKind, clamp_nonpositive: bool = False) -> FitResult:
    """Fit ``kind`` to the series and report the residual RMSE.

    Exponential-family kinds require every value positive unless
    ``clamp_nonpositive`` lifts offenders to CLAMP_FLOOR.
    """
    samples = series.samples
    if len(samples) < kind.min_points:
        raise InsufficientDataError(
            f"{kind.label} fit needs at least {kind.min_points} samples, got {len(samples)}"
        )
    a = 0.0
    b = 0.0
    coefficients: tuple[float, ...] = ()
    if kind.family is ModelFamily.LINEAR:
        line = fit_linear(samples)
        a, b = line.slope, line.intercept
    elif kind.family in EXPONENTIAL_FAMILIES:
        logs = []
        for i, (t, v) in enumerate(samples):
            if v <= 0.0:
                if not clamp_nonpositive:
                    raise DomainError(
                        f"non-positive value {v!r} at t={t!r} (sample {i}) "
                        f"under {kind.label} fit"
                    )
                v = CLAMP_FLOOR
            logs.append((t, math.log(v)))
        line = fit_linear(logs)
        a = line.slope
        if kind.family is ModelFamily.SIN_EXPONENTIAL:
            b = line.intercept - math.sin(a)
        elif kind.family is ModelFamily.COS_EXPONENTIAL:
            b = line.intercept - math.cos(a)
        else:
            b = line.intercept
    else:
        coefficients = _fit_polynomial(samples, kind.degree)
    rmse = _rmse(kind, a, b, coefficients, samples)
    return FitResult(kind=kind, a=a, b=b, coefficients=coefficients,
                     n_points=len(samples), rmse=rmse)


def _fit_polynomial(samples: Pairs, degree: int) -> tuple[float, ...]:
    """Least-squares polynomial via the normal equations, ascending powers."""
    m = degree + 1
    # moments[k] = sum of t^k, k = 0 .. 2*degree
    moments = [0.0] * (2 * degree + 1)
    rhs = [0.0] * m
    for t, v in samples:
        tk = 1.0
        for k in range(2 * degree + 1):
            moments[k] += tk
            if k < m:
                rhs[k] += v * tk
            tk *= t
    matrix = [[moments[j + k] for k in range(m)] for j in range(m)]
    return tuple(_solve_guarded(matrix, rhs))


def _solve_guarded(matrix: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting and a determinant guard.

    The determinant (product of pivots) must stay above DETERMINANT_GUARD
    times the system's scale, taken as the product of the diagonal entries.
    For the Gram matrix of the normal equations that ratio is the
    determinant of the diagonally-normalized system, a range-invariant
    conditioning measure in [0, 1].
    """
    m = len(rhs)
    aug = [row[:] + [r] for row, r in zip(matrix, rhs)]
    scale = 1.0
    for j in range(m):
        scale *= abs(matrix[j][j])
    det = 1.0
    for col in range(m):
        pivot_row = max(range(col, m), key=lambda r: abs(aug[r][col]))
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
            det = -det
        pivot = aug[col][col]
        if pivot == 0.0:
            raise DegenerateAbscissaError(
                "polynomial normal equations are singular for these t values"
            )
        det *= pivot
        for r in range(col + 1, m):
            factor = aug[r][col] / pivot
            if factor != 0.0:
                for c in range(col, m + 1):
                    aug[r][c] -= factor * aug[col][c]
    if abs(det) < DETERMINANT_GUARD * scale:
        raise DegenerateAbscissaError(
            "polynomial normal equations are ill-conditioned for these t values"
        )
    out = [0.0] * m
    for row in range(m - 1, -1, -1):
        acc = aug[row][m]
        for c in range(row + 1, m):
            acc -= aug[row][c] * out[c]
        out[row] = acc / aug[row][row]
    return out


def _evaluate(kind: ModelKind, a: float, b: float,
              coefficients: tuple[float, ...], t: float) -> float:
    family = kind.family
    try:
        if family is ModelFamily.LINEAR:
            value = a * t + b
        elif family is ModelFamily.EXPONENTIAL:
            value = math.exp(a * t + b)
        elif family is ModelFamily.SIN_EXPONENTIAL:
            value = math.exp(a * t + b) + math.sin(a)
        elif family is ModelFamily.COS_EXPONENTIAL:
            value = math.exp(a * t + b) + math.cos(a)
        else:
            value = 0.0
            for coeff in reversed(coefficients):
                value = value * t + coeff
    except OverflowError:
        raise PredictionRangeError(f"{kind.label} prediction overflows at t={t!r}") from None
    if not math.isfinite(value):
        raise PredictionRangeError(f"{kind.label} prediction overflows at t={t!r}")
    return value


def predict(fit: FitResult, t: float) -> float:
    """Evaluate the fitted model at time t; pure composition, no re-fitting."""
    return _evaluate(fit.kind, fit.a, fit.b, fit.coefficients, t)


def _rmse(kind, a, b, coefficients, samples) -> float:
    total = 0.0
    for t, v in samples:
        residual = _evaluate(kind, a, b, coefficients, t) - v
        total += residual * residual
    return math.sqrt(total / len(samples))


def residual_rmse(fit: FitResult, series: AxisSeries) -> float:
    """Root-mean-square of predict(fit, t) - v over the series."""
    if not series.samples:
        raise InsufficientDataError("cannot compute RMSE of an empty series")
    return _rmse(fit.kind, fit.a, fit.b, fit.coefficients, series.samples)
