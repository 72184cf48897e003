"""
Causal moving-average filter.
"""
import numpy as np
from scipy.signal import lfilter

from ..core.errors import InvalidArgumentError


def moving_average(series, window: int) -> np.ndarray:
    """
    Trailing moving average along the first axis.

    Output ``i`` is the mean of ``series[max(0, i - window + 1) : i + 1]``; the
    first ``window - 1`` outputs average the shorter available history.
    Works on real or complex data, 1-D or (frames, channels).

    Args:
        series: Input samples
        window (int): Window length in frames

    Returns:
        np.ndarray: Filtered series with the input's shape

    Raises:
        InvalidArgumentError: If the window is not a positive integer
    """
    if int(window) != window or window < 1:
        raise InvalidArgumentError(f"Moving-average window must be a positive integer, got {window}")
    window = int(window)
    x = np.asarray(series)
    if x.shape[0] == 0:
        return x.copy()
    if window == 1:
        return x.astype(np.result_type(x, float), copy=True)

    sums = lfilter(np.ones(window), [1.0], x, axis=0)
    counts = np.minimum(np.arange(1, x.shape[0] + 1), window).astype(float)
    counts = counts.reshape((-1,) + (1,) * (x.ndim - 1))
    return sums / counts
