"""Detection-stream ingestion.

Parses per-frame bounding boxes from JSONL or CSV streams, deduplicates
them to one box per frame, and converts the surviving boxes into
time-stamped center-point observations split into per-axis series.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Union

from .errors import OrderingError, ParseError, ValidationError


class StreamFormat(Enum):
    JSONL = "jsonl"
    CSV = "csv"


class Axis(Enum):
    X = "x"
    Y = "y"


CSV_HEADER = ["frame", "left", "top", "width", "height", "confidence", "label"]

StreamInput = Union[str, bytes, IO[str], IO[bytes]]


@dataclass(frozen=True)
class DetectionRecord:
    """One raw bounding box as emitted by an upstream detector.

    The box is (left, top, width, height) in pixels; ``confidence`` is the
    detector's score in [0, 1] and defaults to 1.0 when the stream omits it.
    """

    frame_index: int
    left: float
    top: float
    width: float
    height: float
    confidence: float = 1.0
    label: str = ""

    def __post_init__(self) -> None:
        bad = _invalid_field(self.frame_index, self.width, self.height, self.confidence)
        if bad is not None:
            raise ValidationError(f"invalid value for '{bad}'")


@dataclass(frozen=True)
class EndpointObservation:
    """A time-stamped center point (t, x, y) derived from one record."""

    t: float
    x: float
    y: float


@dataclass(frozen=True)
class AxisSeries:
    """One coordinate axis over time: ordered (t, value) samples."""

    axis: Axis
    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        prev = None
        for t, _ in self.samples:
            if prev is not None and t <= prev:
                raise OrderingError(
                    f"{self.axis.value} series t values must be strictly increasing "
                    f"(t={t!r} after t={prev!r})"
                )
            prev = t


def _invalid_field(frame_index, width, height, confidence) -> str | None:
    """Return the name of the first field violating a record invariant."""
    if frame_index < 0:
        return "frame"
    if not width > 0:
        return "width"
    if not height > 0:
        return "height"
    if not 0.0 <= confidence <= 1.0:
        return "confidence"
    return None


def _as_text(data: StreamInput) -> str:
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _require_number(obj: dict, key: str, line_no: int) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"line {line_no}: value for '{key}' must be a number")
    if not math.isfinite(value):
        raise ParseError(f"line {line_no}: value for '{key}' must be finite")
    return value


def _parse_jsonl(text: str) -> list[DetectionRecord]:
    records = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise ParseError(f"line {line_no}: expected a JSON object")
        for key in ("frame", "left", "top", "width", "height"):
            if key not in obj:
                raise ParseError(f"line {line_no}: missing key '{key}'")
        frame = obj["frame"]
        if isinstance(frame, bool) or not isinstance(frame, int):
            raise ParseError(f"line {line_no}: value for 'frame' must be an integer")
        left = _require_number(obj, "left", line_no)
        top = _require_number(obj, "top", line_no)
        width = _require_number(obj, "width", line_no)
        height = _require_number(obj, "height", line_no)
        confidence = _require_number(obj, "confidence", line_no) if "confidence" in obj else 1.0
        label = obj.get("label", "")
        if not isinstance(label, str):
            raise ParseError(f"line {line_no}: value for 'label' must be a string")
        records.append(
            _build_record(frame, left, top, width, height, confidence, label, line_no)
        )
    return records


def _parse_csv(text: str) -> list[DetectionRecord]:
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("line 1: missing CSV header") from None
    if header != CSV_HEADER:
        raise ParseError(f"line 1: CSV header must be exactly '{','.join(CSV_HEADER)}'")
    records = []
    for row in reader:
        line_no = reader.line_num
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(
                f"line {line_no}: expected {len(CSV_HEADER)} fields, got {len(row)}"
            )
        try:
            frame = int(row[0])
        except ValueError:
            raise ParseError(f"line {line_no}: value for 'frame' must be an integer") from None
        floats = {}
        for name, cell in zip(("left", "top", "width", "height"), row[1:5]):
            try:
                floats[name] = float(cell)
            except ValueError:
                raise ParseError(f"line {line_no}: value for '{name}' must be a number") from None
            if not math.isfinite(floats[name]):
                raise ParseError(f"line {line_no}: value for '{name}' must be finite")
        if row[5] == "":
            confidence = 1.0
        else:
            try:
                confidence = float(row[5])
            except ValueError:
                raise ParseError(
                    f"line {line_no}: value for 'confidence' must be a number"
                ) from None
        records.append(
            _build_record(
                frame,
                floats["left"],
                floats["top"],
                floats["width"],
                floats["height"],
                confidence,
                row[6],
                line_no,
            )
        )
    return records


def _build_record(frame, left, top, width, height, confidence, label, line_no) -> DetectionRecord:
    bad = _invalid_field(frame, width, height, confidence)
    if bad is not None:
        raise ValidationError(f"line {line_no}: invalid value for '{bad}'")
    return DetectionRecord(frame, left, top, width, height, confidence, label)


def parse_detections(data: StreamInput, fmt: StreamFormat) -> list[DetectionRecord]:
    """Decode a detection stream into records, preserving file order.

    No deduplication or reordering happens here. Raises ParseError for
    malformed lines and ValidationError for records violating invariants,
    both naming the offending line.
    """
    text = _as_text(data)
    if fmt is StreamFormat.JSONL:
        return _parse_jsonl(text)
    return _parse_csv(text)


def render_detections(records: Iterable[DetectionRecord], fmt: StreamFormat) -> str:
    """Serialize records back to a stream; reparsing yields equal records."""
    if fmt is StreamFormat.JSONL:
        lines = []
        for r in records:
            lines.append(
                json.dumps(
                    {
                        "frame": r.frame_index,
                        "left": r.left,
                        "top": r.top,
                        "width": r.width,
                        "height": r.height,
                        "confidence": r.confidence,
                        "label": r.label,
                    }
                )
            )
        return "".join(line + "\n" for line in lines)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.frame_index,
                repr(r.left),
                repr(r.top),
                repr(r.width),
                repr(r.height),
                repr(r.confidence),
                r.label,
            ]
        )
    return out.getvalue()


def select_per_frame(records: list[DetectionRecord]) -> list[DetectionRecord]:
    """Keep one record per frame: highest confidence, ties broken by
    smallest left, then smallest top. Output sorted by frame index."""
    best: dict[int, DetectionRecord] = {}
    for r in records:
        cur = best.get(r.frame_index)
        if cur is None or _rank(r) < _rank(cur):
            best[r.frame_index] = r
    return [best[frame] for frame in sorted(best)]


def _rank(r: DetectionRecord) -> tuple[float, float, float]:
    return (-r.confidence, r.left, r.top)


def to_observation(record: DetectionRecord) -> EndpointObservation:
    """Center point of the box on the frame-index time axis."""
    return EndpointObservation(
        t=float(record.frame_index),
        x=record.left + record.width / 2.0,
        y=record.top + record.height / 2.0,
    )


def build_series(observations: list[EndpointObservation]) -> tuple[AxisSeries, AxisSeries]:
    """Split observations into an X series of (t, x) and a Y series of (t, y)."""
    xs = AxisSeries(Axis.X, tuple((o.t, o.x) for o in observations))
    ys = AxisSeries(Axis.Y, tuple((o.t, o.y) for o in observations))
    return xs, ys
