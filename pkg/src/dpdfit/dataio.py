"""CSV ingestion for positive-valued series, Tukey-fence outlier
summaries, and the dry-proportion-adjusted median.

Zeros are stripped at ingestion and counted, so every downstream fit
sees wet values only; the dry proportion re-enters through
adjusted_median and nowhere else.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, DomainError, FitError
from .families import ParamVector, quantile

__all__ = [
    "Sample",
    "OutlierSummary",
    "load_csv",
    "load_panel",
    "save_csv",
    "outlier_summary",
    "adjusted_median",
    "REPORT_COLUMNS",
    "write_report_rows",
]

# Column order of the per-series report; param2/se2 stay blank for the
# one-parameter family.
REPORT_COLUMNS = (
    "label",
    "family",
    "alpha_star",
    "param1",
    "param2",
    "se1",
    "se2",
    "cvmd",
    "ric",
    "median_adjusted",
)


@dataclass(frozen=True)
class Sample:
    """Positive observations plus the count of zeros removed upstream."""

    values: tuple
    dry_count: int = 0
    label: str = ""

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        for v in vals:
            if not math.isfinite(v) or v <= 0.0:
                raise DataError(f"sample values must be positive and finite, got {v}")
        if int(self.dry_count) != self.dry_count or self.dry_count < 0:
            raise DataError(f"dry_count must be a nonnegative integer, got {self.dry_count}")
        object.__setattr__(self, "dry_count", int(self.dry_count))

    @property
    def n(self):
        return len(self.values)

    @property
    def dry_proportion(self):
        total = len(self.values) + self.dry_count
        return self.dry_count / total if total else 0.0


@dataclass(frozen=True)
class OutlierSummary:
    q1: float
    q3: float
    iqr: float
    lower_fence: float
    upper_fence: float
    outlier_proportion: float


def _parse_cell(raw, line_num, column):
    if raw is None or not str(raw).strip():
        raise DataError(f"blank or missing '{column}' cell at line {line_num}")
    text = str(raw).strip()
    if text.lower() in ("na", "nan", "null", "n/a"):
        raise DataError(f"missing value marker '{text}' at line {line_num}")
    try:
        v = float(text)
    except ValueError:
        raise DataError(f"non-numeric '{column}' cell {text!r} at line {line_num}") from None
    if not math.isfinite(v):
        raise DataError(f"non-finite '{column}' cell {text!r} at line {line_num}")
    if v < 0.0:
        raise DataError(f"negative value {text} at line {line_num}")
    return v


def _read_rows(path, column, label_column=None):
    """Validated (label, value) pairs in file order, header on line 1."""
    p = Path(path)
    if not p.is_file():
        raise DataError(f"no such file: {path}")
    with open(p, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file, expected a header row")
        if column not in reader.fieldnames:
            raise DataError(f"{path}: no column named {column!r}; found {reader.fieldnames}")
        if label_column is not None and label_column not in reader.fieldnames:
            raise DataError(f"{path}: no column named {label_column!r}; found {reader.fieldnames}")
        rows = []
        for record in reader:
            v = _parse_cell(record.get(column), reader.line_num, column)
            label = str(record[label_column]).strip() if label_column is not None else None
            rows.append((label, v))
    return rows


def _assemble(pairs, label):
    wet = tuple(v for v in pairs if v > 0.0)
    dry = len(pairs) - len(wet)
    return Sample(values=wet, dry_count=dry, label=label)


def load_csv(path, column="value", zero_policy="drop_and_count", label=None):
    """One series from a headered CSV; zeros become dry_count.

    Negative, blank, missing, or non-numeric cells raise DataError
    naming the offending line (header is line 1).
    """
    if zero_policy != "drop_and_count":
        raise DomainError(f"unknown zero_policy {zero_policy!r}")
    rows = _read_rows(path, column)
    return _assemble([v for _, v in rows], label if label is not None else Path(path).stem)


def load_panel(path, column="value", label_column="label", zero_policy="drop_and_count"):
    """Multiple series keyed by a label column, first-appearance order."""
    if zero_policy != "drop_and_count":
        raise DomainError(f"unknown zero_policy {zero_policy!r}")
    rows = _read_rows(path, column, label_column=label_column)
    grouped = {}
    for label, v in rows:
        grouped.setdefault(label, []).append(v)
    return [_assemble(vals, label) for label, vals in grouped.items()]


def save_csv(sample, path_or_fp):
    """Write year,value rows; values keep full repr precision so a
    reload is bit-exact. Dry months come last as zero rows."""

    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(["year", "value"])
        year = 0
        for v in sample.values:
            year += 1
            writer.writerow([year, repr(float(v))])
        for _ in range(sample.dry_count):
            year += 1
            writer.writerow([year, "0.0"])

    if hasattr(path_or_fp, "write"):
        _write(path_or_fp)
    else:
        with open(path_or_fp, "w", newline="", encoding="utf-8") as fh:
            _write(fh)


def outlier_summary(sample):
    """Tukey fences at 1.5 IQR, quartiles by linear interpolation of
    order statistics; the proportion counts strict fence violations
    among the positive values, as a percentage."""
    xs = np.asarray(sample.values, dtype=float)
    if xs.size < 4:
        raise DataError(f"outlier summary needs at least 4 values, got {xs.size}")
    q1 = float(np.quantile(xs, 0.25))
    q3 = float(np.quantile(xs, 0.75))
    iqr = q3 - q1
    lower = q1 - 1.5 * iqr
    upper = q3 + 1.5 * iqr
    count = int(np.count_nonzero((xs < lower) | (xs > upper)))
    return OutlierSummary(
        q1=q1,
        q3=q3,
        iqr=iqr,
        lower_fence=lower,
        upper_fence=upper,
        outlier_proportion=100.0 * count / xs.size,
    )


def adjusted_median(fit_result, dry_count, n_wet=None):
    """Median of the zero-inflated mixture in data units.

    With dry proportion p = dry/(dry + wet): zero when p > 0.5, and the
    (0.5 - p)/(1 - p) quantile of the fitted law otherwise. At exactly
    p = 0.5 the rule asks for the level-0 quantile, which is the left
    support endpoint: zero.
    """
    if not fit_result.converged:
        raise FitError("adjusted median requires a converged fit")
    if n_wet is None:
        n_wet = fit_result.n_obs
    if dry_count < 0 or n_wet < 1:
        raise DomainError("need dry_count >= 0 and n_wet >= 1")
    p = dry_count / (dry_count + n_wet)
    if p >= 0.5:
        return 0.0
    level = (0.5 - p) / (1.0 - p)
    theta = fit_result.theta_hat
    if not isinstance(theta, ParamVector):
        theta = ParamVector(fit_result.family, tuple(theta))
    return float(quantile(theta, level))


def _format_field(v):
    if v is None or v == "":
        return ""
    if isinstance(v, str):
        return v
    return f"{float(v):.10g}"


def write_report_rows(rows, path_or_fp):
    """Report CSV with the fixed REPORT_COLUMNS schema."""

    def _write(fh):
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow([_format_field(row.get(col)) for col in REPORT_COLUMNS])

    if hasattr(path_or_fp, "write"):
        _write(path_or_fp)
    else:
        with open(path_or_fp, "w", newline="", encoding="utf-8") as fh:
            _write(fh)
