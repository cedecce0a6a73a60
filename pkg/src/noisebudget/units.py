"""Decibel/linear power-ratio conversions.

Everything inside this package runs on linear power ratios; decibels
appear only at the I/O boundaries (file ingestion and report output).
"""

from __future__ import annotations

import math

__all__ = ["db_to_linear", "linear_to_db"]


def db_to_linear(db: float) -> float:
    """Convert decibels to a linear power ratio: ``10 ** (db / 10)``.

    Total on all finite inputs and strictly increasing.

    >>> db_to_linear(0.0)
    1.0
    >>> db_to_linear(10.0)
    10.0
    """
    return 10.0 ** (db / 10.0)


def linear_to_db(ratio: float) -> float:
    """Convert a linear power ratio to decibels: ``10 * log10(ratio)``.

    Inverse of :func:`db_to_linear` for positive ratios.

    >>> linear_to_db(100.0)
    20.0

    Raises:
        ValueError: if ``ratio`` is not > 0.
    """
    if not ratio > 0.0:
        raise ValueError(f"power ratio must be > 0 to convert to dB, got {ratio!r}")
    return 10.0 * math.log10(ratio)
