"""Moving-window averaging with moving-std errors."""

from __future__ import annotations

import numpy as np


def smooth(values, window: int):
    """Centered moving mean and moving standard deviation per point.

    The window shrinks symmetrically at the edges; window = 1 is the
    identity with zero errors.  Returns (means, errors).
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    if window < 1 or window % 2 == 0:
        raise ValueError("window must be odd and >= 1")
    if window > n:
        raise ValueError("window larger than the series")
    half = window // 2
    means = np.empty(n)
    errors = np.empty(n)
    for i in range(n):
        k = min(half, i, n - 1 - i)
        chunk = values[i - k:i + k + 1]
        means[i] = chunk.mean()
        errors[i] = chunk.std()
    return means, errors
