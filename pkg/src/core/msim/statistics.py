# src/core/msim/statistics.py
from typing import Optional, Tuple

from scipy import stats

CONFIDENCE = 0.95


def poisson_rate_ci(failures: int, exposure: float, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Exact (chi-square) interval for a Poisson rate observed as `failures` over `exposure`"""
    alpha = 1.0 - confidence
    low = stats.chi2.ppf(alpha / 2, 2 * failures) / (2 * exposure) if failures > 0 else 0.0
    high = stats.chi2.ppf(1 - alpha / 2, 2 * failures + 2) / (2 * exposure)
    return float(low), float(high)


def gamma_rate_ci(failures: int, exposure: float, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """
    Interval for a Poisson rate when observation stops at the `failures`-th
    failure, so `exposure` is Gamma(failures, rate) and 2*rate*exposure is
    chi-square with 2*failures degrees of freedom.
    """
    if failures <= 0:
        raise ValueError("failure-stopped interval needs at least one failure")
    alpha = 1.0 - confidence
    low = stats.chi2.ppf(alpha / 2, 2 * failures) / (2 * exposure)
    high = stats.chi2.ppf(1 - alpha / 2, 2 * failures) / (2 * exposure)
    return float(low), float(high)


def mtbf_ci(failures: int, exposure: float, confidence: float = CONFIDENCE,
            failure_stopped: bool = False) -> Tuple[Optional[float], Optional[float]]:
    """
    Interval on mean time between failures. With no failures only a
    one-sided lower bound exists; the upper end is None.
    """
    if failure_stopped:
        low_rate, high_rate = gamma_rate_ci(failures, exposure, confidence)
        return 1.0 / high_rate, 1.0 / low_rate
    if failures == 0:
        rate_upper = stats.chi2.ppf(confidence, 2) / (2 * exposure)
        return float(1.0 / rate_upper), None
    low_rate, high_rate = poisson_rate_ci(failures, exposure, confidence)
    return 1.0 / high_rate, 1.0 / low_rate


def binomial_ci(successes: int, trials: int, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Clopper-Pearson interval on a proportion"""
    if trials <= 0:
        raise ValueError("binomial interval needs at least one trial")
    alpha = 1.0 - confidence
    low = stats.beta.ppf(alpha / 2, successes, trials - successes + 1) if successes > 0 else 0.0
    high = stats.beta.ppf(1 - alpha / 2, successes + 1, trials - successes) if successes < trials else 1.0
    return float(low), float(high)
