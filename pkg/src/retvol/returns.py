"""Log returns, normalized returns, and powered absolute returns."""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateVariance
from .sampling import DROP_INTERVAL

_MIN_LEN = 2


@dataclass
class ReturnSeries:
    """Log returns on a fixed grid; one value per consecutive price pair.

    source_gap_mask[i] is True when the interval ending the i-th return
    had no trades (the return is then an exact zero under carry-forward
    sampling).
    """

    values: np.ndarray
    delta_t: int
    source_gap_mask: np.ndarray
    gap_policy: str = "carry_forward"

    def __len__(self):
        return len(self.values)


@dataclass
class NormalizedReturns:
    """Returns centered and scaled to unit sample standard deviation."""

    values: np.ndarray
    mean_raw: float
    sigma_raw: float

    def __len__(self):
        return len(self.values)


@dataclass
class PoweredSeries:
    """Elementwise |r|^d of a normalized return series."""

    d: float
    values: np.ndarray

    def __len__(self):
        return len(self.values)


def log_returns(prices):
    """Logarithmic price differences of a PriceSeries.

    values[i] = ln(prices[i+1]) - ln(prices[i]); length N-1. The gap
    mask shifts with the interval that *ends* each return.
    """
    p = np.asarray(prices.prices, dtype=np.float64)
    values = np.diff(np.log(p))
    return ReturnSeries(values, prices.delta_t, prices.gap_mask[1:].copy(),
                        gap_policy=prices.gap_policy)


def drop_gap_returns(returns):
    """Remove returns whose interval had no trades (drop_interval policy)."""
    keep = ~returns.source_gap_mask
    return ReturnSeries(returns.values[keep], returns.delta_t,
                        np.zeros(int(keep.sum()), dtype=bool),
                        gap_policy=returns.gap_policy)


def apply_gap_policy(returns):
    """Apply the recorded gap policy: drop gap returns iff drop_interval."""
    if returns.gap_policy == DROP_INTERVAL:
        return drop_gap_returns(returns)
    return returns


def standardize(returns):
    """Center and scale returns: r_i = (R_i - mean) / sample_std.

    Uses the sample (N-1 denominator) standard deviation; the raw mean
    and sigma are kept on the result for reporting.

    Raises
    ------
    DegenerateVariance
        The input is constant.
    """
    r = np.asarray(returns.values, dtype=np.float64)
    if len(r) < _MIN_LEN:
        raise DegenerateVariance("need >= 2 returns to standardize")
    mean = float(r.mean())
    sigma = float(r.std(ddof=1))
    if sigma == 0.0 or np.all(r == r[0]):
        raise DegenerateVariance("constant return series")
    return NormalizedReturns((r - mean) / sigma, mean, sigma)


def abs_power(r, d):
    """Elementwise |r_i|^d for d > 0; |0|^d is exactly 0."""
    if not d > 0:
        raise ValueError(f"power d must be > 0, got {d}")
    values = r.values if isinstance(r, NormalizedReturns) else np.asarray(r)
    return PoweredSeries(float(d), np.abs(values) ** float(d))
