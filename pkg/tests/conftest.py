"""Shared fixtures and small builders for the test-suite."""

import numpy as np
import pytest

from dpdfit.dataio import Sample


def as_sample(values, label="test-sample"):
    """Wrap an iterable of positive floats as a Sample."""
    return Sample(values=tuple(float(v) for v in values), dry_count=0, label=label)


def write_csv(path, values, column="value"):
    """Write a one-column CSV (plus a year column) and return the path."""
    with open(path, "w") as fh:
        fh.write(f"year,{column}\n")
        for i, v in enumerate(values):
            fh.write(f"{1951 + i},{v}\n")
    return str(path)


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)
